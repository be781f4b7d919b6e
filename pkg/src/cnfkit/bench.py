"""Benchmark families: pigeonhole, extended pigeonhole, and xor rings.

All generators are pure functions of n with fixed variable numbering, so
outputs are reproducible byte for byte.
"""

from .circuit import XOR, Circuit
from .formula import CnfFormula

__all__ = ["php_var", "gen_php", "gen_ephp", "ephp_extension_vars",
           "gen_xor_unsat", "gen_xor_circuit"]


def php_var(i: int, j: int, n: int) -> int:
    """Variable for pigeon i (1..n+1) in hole j (1..n): (i-1)*n + j."""
    return (i - 1) * n + j


def gen_php(n: int) -> CnfFormula:
    """n+1 pigeons into n holes; unsatisfiable for every n.

    Emits one clause per pigeon (it sits somewhere) and, per hole, one clause
    per pigeon pair (no two share it): (n+1) + n*(n+1)*n/2 clauses total.
    """
    if n < 1:
        raise ValueError("php needs n >= 1")
    f = CnfFormula(num_vars=(n + 1) * n)
    for i in range(1, n + 2):
        f.add_clause([php_var(i, j, n) for j in range(1, n + 1)])
    for j in range(1, n + 1):
        for i1 in range(1, n + 2):
            for i2 in range(i1 + 1, n + 2):
                f.add_clause([-php_var(i1, j, n), -php_var(i2, j, n)])
    return f


def ephp_extension_vars(n: int) -> int:
    """Number of extension variables: sum over levels m=1..n-1 of (m+1)*m."""
    return sum((m + 1) * m for m in range(1, n))


def gen_ephp(n: int) -> CnfFormula:
    """Pigeonhole plus extension-variable definitions.

    For each level m from n-1 down to 1, fresh variables q_m(i,j) are defined
    by q_m(i,j) <-> q_{m+1}(i,j) or (q_{m+1}(i,m+1) and q_{m+1}(m+2,j)), with
    the level-n variables being the pigeonhole variables.  Each definition
    contributes four clauses.  Equisatisfiable with gen_php(n), so still
    unsatisfiable.
    """
    if n < 2:
        raise ValueError("ephp needs n >= 2")
    f = gen_php(n)

    level_vars: dict[tuple[int, int, int], int] = {}
    for i in range(1, n + 2):
        for j in range(1, n + 1):
            level_vars[(n, i, j)] = php_var(i, j, n)
    next_var = (n + 1) * n + 1
    for m in range(n - 1, 0, -1):
        for i in range(1, m + 2):
            for j in range(1, m + 1):
                level_vars[(m, i, j)] = next_var
                next_var += 1
    f.num_vars = next_var - 1

    for m in range(n - 1, 0, -1):
        for i in range(1, m + 2):
            for j in range(1, m + 1):
                q = level_vars[(m, i, j)]
                a = level_vars[(m + 1, i, j)]
                b = level_vars[(m + 1, i, m + 1)]
                c = level_vars[(m + 1, m + 2, j)]
                f.add_clause([-q, a, b])
                f.add_clause([-q, a, c])
                f.add_clause([-a, q])
                f.add_clause([-b, -c, q])
    return f


def gen_xor_unsat(n: int) -> CnfFormula:
    """Ring of parity constraints x_i xor x_{i+1} = true (indices mod n),
    each as two clauses; 2n clauses, unsatisfiable exactly when n is odd."""
    if n < 2:
        raise ValueError("xor ring needs n >= 2")
    f = CnfFormula(num_vars=n)
    pairs = [(i, i + 1) for i in range(1, n)] + [(n, 1)]
    for x, y in pairs:
        f.add_clause([x, y])
        f.add_clause([-x, -y])
    return f


def gen_xor_circuit(n: int) -> Circuit:
    """Chain of binary xor gates over n inputs, constrained true (the circuit
    counterpart of the ring family, used for encoder tests)."""
    if n < 2:
        raise ValueError("xor chain needs n >= 2")
    c = Circuit()
    for i in range(1, n + 1):
        c.add_input(f"x{i}")
    prev = "x1"
    for i in range(2, n + 1):
        prev = c.add_gate(f"g{i}", XOR, (prev, f"x{i}"))
    c.add_constraint(prev, True)
    return c
