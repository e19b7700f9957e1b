"""Bounded verification of voting-rule axioms over variable societies."""

from .axioms import AXIOMS, CheckBounds, CheckResult, Witness, check, replay, replay_json
from .prefcore import (
    Domain,
    Preference,
    Profile,
    enumerate_linear_orders,
    enumerate_separable,
    is_separable,
    separable_plus,
    subsets_domain,
    universal_domain,
)
from .rules import RULE_NAMES, RuleSpec, catalog, get_rule, tops_only_extension
from .verify import (
    VerdictReport,
    independence_matrix,
    verify_lemma1,
    verify_prop1,
    verify_prop2,
    verify_prop3,
    verify_remark2,
    verify_theorem1,
    verify_theorem2,
)

__version__ = "0.1.0"

__all__ = [
    "AXIOMS", "CheckBounds", "CheckResult", "Witness", "check", "replay", "replay_json",
    "Domain", "Preference", "Profile", "enumerate_linear_orders", "enumerate_separable", "is_separable",
    "separable_plus", "subsets_domain", "universal_domain",
    "RULE_NAMES", "RuleSpec", "catalog", "get_rule", "tops_only_extension",
    "VerdictReport", "independence_matrix", "verify_lemma1", "verify_prop1", "verify_prop2", "verify_prop3",
    "verify_remark2", "verify_theorem1", "verify_theorem2",
]
