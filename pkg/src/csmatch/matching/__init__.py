"""Matchmaking: constraint models, grading, ranking, and the reference oracle."""

from .degrees import MatchingDegree, degree_of_scalar, feature_degree, match_feature_list
from .engine import match
from .models import (
    BuiltModel,
    build_model_hard,
    build_model_soft_boolean,
    build_model_soft_difference,
    split_constraints,
)
from .oracle import oracle_match
from .report import (
    POINTS,
    MatchRanking,
    MatchReport,
    PropertyResult,
    ranking_key,
    score,
    sort_ranking,
)

__all__ = [
    "BuiltModel",
    "MatchRanking",
    "MatchReport",
    "MatchingDegree",
    "POINTS",
    "PropertyResult",
    "build_model_hard",
    "build_model_soft_boolean",
    "build_model_soft_difference",
    "degree_of_scalar",
    "feature_degree",
    "match",
    "match_feature_list",
    "oracle_match",
    "ranking_key",
    "score",
    "sort_ranking",
    "split_constraints",
]
