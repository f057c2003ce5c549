"""Seeded generators and randomized theorem/conjecture campaigns."""
from .generators import FAMILIES, BudgetExhausted, generate, rng_for, trial_seed
from .campaigns import (
    THEOREMS,
    TheoremViolation,
    TrialRecord,
    UnsupportedDimension,
    extremal_search,
    test_conjecture_kfacets,
    test_conjecture_suborthocentric,
    verify_theorem_suite,
)
