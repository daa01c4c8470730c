"""Hand-written reference polynomial for the 6-vertex instance.

Written out term by term (not generated by the package) and expanded with
sympy, so it serves as an independent check of the QUBO compiler.
"""

import sympy as sp

X = sp.symbols("x0:10")


def six_node_qubo_expr(penalty):
    x0, x1, x2, x3, x4, x5, x6, x7, x8, x9 = X
    p = sp.nsimplify(penalty)
    return (
        x0 + x1 + x2 + x3 + x4 + x5
        + p * (1 - x0 - x2 + x0 * x2)
        + p * (1 - x1 - x3 + x1 * x3)
        + p * (x2 + x0 + x4 + x3 - (x6 + 2 * x7) - 1) ** 2
        + p * (x3 + x1 + x2 + x5 - (x8 + 2 * x9) - 1) ** 2
        + p * (1 - x4 - x2 + x4 * x2)
        + p * (1 - x5 - x3 + x5 * x3)
        + p * x0 * x2 + p * x1 * x3 + p * x2 * x4 + p * x2 * x3 + p * x3 * x5
    )


def collected_terms(expr):
    """Expand, fold ``x**2 -> x`` and return (constant, linear, quadratic) dicts."""
    poly = sp.Poly(sp.expand(expr), *X)
    constant = 0.0
    linear, quadratic = {}, {}
    for powers, coeff in poly.terms():
        present = [i for i, k in enumerate(powers) if k]
        c = float(coeff)
        if not present:
            constant += c
        elif len(present) == 1:
            linear[present[0]] = linear.get(present[0], 0.0) + c
        else:
            key = tuple(present)
            quadratic[key] = quadratic.get(key, 0.0) + c
    linear = {k: v for k, v in linear.items() if v != 0.0}
    quadratic = {k: v for k, v in quadratic.items() if v != 0.0}
    return constant, linear, quadratic
