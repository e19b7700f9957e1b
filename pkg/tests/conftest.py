import jsonschema
import pytest
from referencing import Registry, Resource

from axiomlab.schemas import NAMES, load_schema


def _registry():
    resources = []
    for name in NAMES:
        schema = load_schema(name)
        resources.append((schema["$id"], Resource.from_contents(schema)))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validate(doc, name):
    schema = load_schema(name)
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


@pytest.fixture
def schema_validate():
    return validate
