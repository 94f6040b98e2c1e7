"""Worked lambda^+ examples at e = 3 (e' = 4), level one, edge 0.

Each entry: (lambda, rho, lambda^+, residue rows of lambda^+ after relabelling).
"""

LAMBDA_PLUS_TABLE = [
    ("1", 0, "2", [[0, 1]]),
    ("1^2", 1, "1^3", [[2], [1], [0]]),
    # the old 3 at (2,1) is relabelled to 4 like every other residue above the edge
    ("2^2", 0, "3^2", [[0, 1, 2], [4, 0, 1]]),
    ("2,1", 1, "2,1^2", [[2, 3], [1], [0]]),
    ("2,2", 1, "2^2,1", [[2, 3], [1, 2], [0]]),
    ("2,2,2", 1, "2^4", [[2, 3], [1, 2], [0, 1], [4, 0]]),
    ("4,3,2", 3, "5,4,2", [[4, 0, 1, 2, 3], [3, 4, 0, 1], [2, 3]]),
    ("4,4,4,4", 1, "5,4,4,4,3", [[2, 3, 4, 0, 1], [1, 2, 3, 4], [0, 1, 2, 3], [4, 0, 1, 2], [3, 4, 0]]),
    ("5,3,3,2,1", 2, "6,3,3,2,2,1", [[3, 4, 0, 1, 2, 3], [2, 3, 4], [1, 2, 3], [0, 1], [4, 0], [3]]),
    ("5,3,3,2,1", 3, "6,4,3,2,1,1", [[4, 0, 1, 2, 3, 4], [3, 4, 0, 1], [2, 3, 4], [1, 2], [0], [4]]),
    (
        "8,7,5,5,4,3,2,2,1",
        0,
        "10,9,6,6,4,3,2,2,2,1,1",
        [
            [0, 1, 2, 3, 4, 0, 1, 2, 3, 4],
            [4, 0, 1, 2, 3, 4, 0, 1, 2],
            [3, 4, 0, 1, 2, 3],
            [2, 3, 4, 0, 1, 2],
            [1, 2, 3, 4],
            [0, 1, 2],
            [4, 0],
            [3, 4],
            [2, 3],
            [1],
            [0],
        ],
    ),
    ("1^9", 0, "2,1^10", [[0, 1], [4], [3], [2], [1], [0], [4], [3], [2], [1], [0]]),
]

E = 3
