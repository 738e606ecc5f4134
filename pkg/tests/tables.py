"""Frozen reference values shared across test modules.

The joint-probability grids (4 decimals) cover the 5-node complete network
with two types (sizes 2 and 3), p=0.2, q=0.1 at depths 2, 3 and 4; rows are
x_1 = 0..2, columns x_2 = 0..3.
"""

import numpy as np

TABLE_GRIDS = {
    2: np.array(
        [
            [0.3277, 0.1612, 0.0588, 0.0131],
            [0.1075, 0.1175, 0.0788, 0.0245],
            [0.0196, 0.0394, 0.0367, 0.0152],
        ]
    ),
    3: np.array(
        [
            [0.3277, 0.1612, 0.0588, 0.0126],
            [0.1075, 0.1175, 0.0755, 0.0255],
            [0.0196, 0.0377, 0.0383, 0.0181],
        ]
    ),
    4: np.array(
        [
            [0.3277, 0.1612, 0.0588, 0.0126],
            [0.1075, 0.1175, 0.0755, 0.0253],
            [0.0196, 0.0377, 0.0380, 0.0186],
        ]
    ),
}

# Power-grid monitoring scoring table: counts of compromised (PMUs, PDCs,
# workstation computers), sizes (5, 2, 1). Ordered rules, first match wins;
# unlisted vectors default to the top severity.
SCORE_RULES_JSON = """
{
  "default": 5,
  "rules": [
    {"pattern": ["==0", "==0", "==0"], "score": 0},
    {"pattern": ["==1", "==0", "==0"], "score": 1},
    {"pattern": ["==2", "==0", "==0"], "score": 2},
    {"pattern": ["==3", "==0", "==0"], "score": 3},
    {"pattern": ["==0", "==1", "==0"], "score": 3},
    {"pattern": ["==0", "==2", "==0"], "score": 3},
    {"pattern": ["==1", ">=1", "==0"], "score": 4},
    {"pattern": ["==2", ">=1", "==0"], "score": 4},
    {"pattern": ["==3", ">=1", "==0"], "score": 4},
    {"pattern": ["==4", "==0", "==0"], "score": 4},
    {"pattern": ["==0", "==0", ">=1"], "score": 5},
    {"pattern": ["==4", ">=1", "==0"], "score": 5},
    {"pattern": ["==5", "==0", "==0"], "score": 5}
  ]
}
"""

# Every explicitly listed (vector -> score) assignment from the table above.
SCORE_ASSIGNMENTS = [
    ((0, 0, 0), 0),
    ((1, 0, 0), 1),
    ((2, 0, 0), 2),
    ((3, 0, 0), 3),
    ((0, 1, 0), 3),
    ((0, 2, 0), 3),
    ((1, 1, 0), 4),
    ((1, 2, 0), 4),
    ((2, 1, 0), 4),
    ((2, 2, 0), 4),
    ((3, 1, 0), 4),
    ((3, 2, 0), 4),
    ((4, 0, 0), 4),
    ((0, 0, 1), 5),
    ((4, 1, 0), 5),
    ((4, 2, 0), 5),
    ((5, 0, 0), 5),
]
