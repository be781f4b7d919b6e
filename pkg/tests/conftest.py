"""Shared corpus builders for the property and acceptance suites."""

import random

import pytest

from cnfkit.circuit import (AND, CARD, EQUIV, EVEN, FALSE, IMPLY, ITE, NOT,
                            OR, TRUE, XOR, Circuit)
from cnfkit.formula import CnfFormula, normalize_clause


def random_formula(rng: random.Random, max_vars=8, max_clauses=20) -> CnfFormula:
    """Random CNF with clause widths 1-4; tautologies dropped as in parsing."""
    num_vars = rng.randint(1, max_vars)
    formula = CnfFormula(num_vars=num_vars)
    for _ in range(rng.randint(0, max_clauses)):
        width = rng.randint(1, 4)
        lits = [rng.choice((-1, 1)) * rng.randint(1, num_vars)
                for _ in range(width)]
        clause, taut = normalize_clause(lits)
        if not taut:
            formula.add_clause(clause)
    return formula


_NARY = (AND, OR, XOR, EVEN, EQUIV)


def random_circuit(rng: random.Random, max_gates=10, max_inputs=6) -> Circuit:
    """Random constrained circuit over every gate type, constants included.
    Children may repeat and gates may be left unconstrained or dead."""
    circuit = Circuit()
    pool = []
    for i in range(1, rng.randint(1, max_inputs) + 1):
        pool.append(circuit.add_input(f"x{i}"))
    for i in range(rng.randint(1, max_gates)):
        name = f"g{i}"
        roll = rng.random()
        if roll < 0.08:
            circuit.add_gate(name, rng.choice((TRUE, FALSE)))
        elif roll < 0.18:
            circuit.add_gate(name, NOT, (rng.choice(pool),))
        elif roll < 0.28:
            circuit.add_gate(name, IMPLY,
                             (rng.choice(pool), rng.choice(pool)))
        elif roll < 0.40:
            circuit.add_gate(name, ITE, tuple(rng.choice(pool)
                                              for _ in range(3)))
        elif roll < 0.52:
            width = rng.randint(1, 4)
            kids = tuple(rng.choice(pool) for _ in range(width))
            lo = rng.randint(0, width)
            hi = rng.randint(lo, width + 1)
            circuit.add_gate(name, CARD, kids, lo, hi)
        else:
            width = rng.randint(1, 4)
            circuit.add_gate(name, rng.choice(_NARY),
                             tuple(rng.choice(pool) for _ in range(width)))
        pool.append(name)
    for name in pool:
        if rng.random() < 0.22:
            circuit.add_constraint(name, rng.random() < 0.8)
    return circuit


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
