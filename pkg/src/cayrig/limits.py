"""Default work budgets; every consumer takes an override parameter."""

# Largest group order that elements() will enumerate.
ENUM_LIMIT = 100_000

# Largest ball (element count) produced by breadth-first closure.
BALL_BUDGET = 100_000

# Ball radius guard; the local checks only ever need radius <= 3.
MAX_BALL_RADIUS = 4

# Vertex budgets for automorphism search.
AUT_VERTICES_FIXED = 5_000
AUT_VERTICES_FREE = 512

# Cap on enumerated automorphisms / search-tree nodes.
AUT_COUNT_BUDGET = 100_000
AUT_NODE_BUDGET = 2_000_000
