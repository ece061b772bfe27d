"""Curated problem instances, as scripts in the input language."""
from __future__ import annotations

CUSP_ORDER = 12


def cusp_script(order=CUSP_ORDER, trunc=8):
    return (
        f"ring Q [x, y] trunc {trunc}\n"
        "ideal N = x^2 - y^3\n"
        "ideal Z = x, y\n"
        "point a = (0, 0)\n"
        f"curvesel N Z a order {order}\n"
    )


def root_tower_script(K, order=None, trunc=None):
    """N_K = (x1 - xk^k : 2 <= k <= K), Z the maximal ideal, base point 0."""
    names = [f"x{i}" for i in range(1, K + 1)]
    order = order or 12
    trunc = trunc or order
    gens = ", ".join(f"x1 - x{k}^{k}" for k in range(2, K + 1))
    return (
        f"ring Q [{', '.join(names)}] trunc {trunc}\n"
        f"ideal N = {gens}\n"
        f"ideal Z = {', '.join(names)}\n"
        f"point a = ({', '.join('0' for _ in names)})\n"
        f"curvesel N Z a order {order}\n"
    )


def cusp_arcsel_script(level=2, order=12, trunc=6):
    """Jets of (t^3, t^2) on the cusp, avoiding the stratum x_2 = 0."""
    return (
        f"ring Q [x, y] trunc {trunc}\n"
        "ideal X = x^2 - y^3\n"
        "ideal E = 0\n"
        "ideal W = x_2\n"
        "arc g = (t^3, t^2)\n"
        f"arcsel X E W g level {level} order {order}\n"
    )


def jets_script(level, trunc=6):
    return f"ring Q [x, y] trunc {trunc}\nideal X = x^2 - y^3\njets X order {level}\n"


# (ring line, N generators, Z generators, point): Z generates the same ideal as N
_IMPROPER = [
    ("ring Q [x, y] trunc 8", "x^2 - y^3", "x^2 - y^3", "(0, 0)"),
    ("ring Q [x, y] trunc 8", "x*y", "x*y", "(0, 0)"),
    ("ring Q [x, y] trunc 6", "x", "x", "(0, 0)"),
    ("ring Q [x, y, z] trunc 6", "x^2 + y^2 - z^2", "x^2 + y^2 - z^2", "(0, 0, 0)"),
    ("ring Q [x, y, z] trunc 6", "x^2 - y^2*z", "2*x^2 - 2*y^2*z", "(0, 0, 0)"),
    ("ring Q [x1, x2] trunc 8", "x1 - x2^2", "x1 - x2^2", "(0, 0)"),
    ("ring Q [x1, x2, x3] trunc 8", "x1 - x2^2, x1 - x3^3", "x1 - x3^3, x1 - x2^2", "(0, 0, 0)"),
    ("ring F 101 [x, y] trunc 8", "x^2 - y^3", "x^2 - y^3", "(0, 0)"),
    ("ring Q [x, y] trunc 8", "(x - 1)^2 - (y - 2)^3", "(x - 1)^2 - (y - 2)^3", "(1, 2)"),
    ("ring F 7 [x, y, z] trunc 6", "x*y - z^2, y", "y, x*y - z^2", "(0, 0, 0)"),
]


def improper_scripts(order=8):
    """Ten instances with Z = N: curve selection must refuse them."""
    return [
        f"{ring}\nideal N = {n}\nideal Z = {z}\npoint a = {pt}\ncurvesel N Z a order {order}\n"
        for ring, n, z, pt in _IMPROPER
    ]


# (ring line, N, Z) pairs whose projection chains exercise the resultant step
ELIMINATION_CORPUS = [
    ("ring Q [x, y] trunc 8", ["x^2 - y^3"], ["x", "y"]),
    ("ring Q [x1, x2, x3] trunc 12", ["x1 - x2^2", "x1 - x3^3"], ["x1", "x2", "x3"]),
    ("ring Q [x1, x2, x3, x4] trunc 12", ["x1 - x2^2", "x1 - x3^3", "x1 - x4^4"],
     ["x1", "x2", "x3", "x4"]),
    ("ring Q [x, y, z] trunc 8", ["x^2 - y^2*z"], ["x", "y"]),
    ("ring Q [x, y, z] trunc 8", ["x*y - z^2", "x^3 - y^2"], ["x", "y", "z"]),
    ("ring Q [x, y, z] trunc 10", ["x^2 + y^3 - z^5", "y*z - x^2"], ["x", "y", "z"]),
    ("ring F 10007 [x, y, z] trunc 8", ["x^2 - y^3", "z^2 - x*y"], ["x", "y", "z"]),
    ("ring Q [x, y] trunc 10", ["(x - y)^2 - y^5"], ["y"]),
]
