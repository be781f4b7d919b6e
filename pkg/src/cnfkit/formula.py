"""CNF core: clauses, occurrence-indexed formulas, and the base simplifications.

Literals are nonzero ints in the DIMACS convention: variable ``v`` is the
positive literal, ``-v`` its negation.  Clauses are duplicate-free tuples in
canonical order (ascending variable, positive phase first).  A formula is a
clause *multiset*: each clause has a stable integer id, and two clauses with
identical literals are distinct members.
"""

from collections import deque

__all__ = [
    "lit_key",
    "normalize_clause",
    "clause_satisfied",
    "satisfies",
    "CnfFormula",
    "bcp",
    "propagate_units",
    "failed_literal_probe",
    "pure_literal_elim",
    "BinaryImplicationGraph",
    "build_big",
    "equivalent_literal_substitution",
    "bounded_variable_elim",
]


def lit_key(lit: int):
    """Canonical sort key: 1 < -1 < 2 < -2 < ..."""
    return (abs(lit), lit < 0)


def normalize_clause(lits) -> tuple[tuple[int, ...], bool]:
    """Deduplicate and sort a raw literal list.

    Returns ``(clause, is_tautology)``; complementary pairs are kept in the
    clause, the flag just reports their presence.
    """
    seen = set(lits)
    if 0 in seen:
        raise ValueError("0 is not a literal")
    taut = any(-l in seen for l in seen)
    return tuple(sorted(seen, key=lit_key)), taut


def clause_satisfied(lits, assign: dict) -> bool:
    return any(assign.get(abs(l)) == (l > 0) for l in lits)


def satisfies(formula, assign: dict) -> bool:
    """True iff the (total enough) assignment satisfies every clause."""
    return all(clause_satisfied(c, assign) for c in formula.clauses.values())


class CnfFormula:
    """Clause multiset with an always-consistent literal occurrence index."""

    __slots__ = ("clauses", "lit_sets", "occ", "num_vars", "_next_id")

    def __init__(self, num_vars: int = 0, clauses=None):
        self.clauses: dict[int, tuple[int, ...]] = {}
        self.lit_sets: dict[int, frozenset] = {}
        self.occ: dict[int, set[int]] = {}
        self.num_vars = num_vars
        self._next_id = 0
        for c in clauses or ():
            self.add_clause(c)

    def add_clause(self, lits) -> int:
        clause, _ = normalize_clause(lits)
        cid = self._next_id
        self._next_id += 1
        self.clauses[cid] = clause
        self.lit_sets[cid] = frozenset(clause)
        for l in clause:
            self.occ.setdefault(l, set()).add(cid)
            if abs(l) > self.num_vars:
                self.num_vars = abs(l)
        return cid

    def remove_clause(self, cid: int) -> tuple[int, ...]:
        clause = self.clauses.pop(cid)
        del self.lit_sets[cid]
        for l in clause:
            ids = self.occ[l]
            ids.discard(cid)
            if not ids:
                del self.occ[l]
        return clause

    def replace_clause(self, cid: int, lits):
        """Swap a clause's literals in place, keeping its id."""
        clause, _ = normalize_clause(lits)
        for l in self.clauses[cid]:
            ids = self.occ[l]
            ids.discard(cid)
            if not ids:
                del self.occ[l]
        self.clauses[cid] = clause
        self.lit_sets[cid] = frozenset(clause)
        for l in clause:
            self.occ.setdefault(l, set()).add(cid)

    def clause(self, cid: int) -> tuple[int, ...]:
        return self.clauses[cid]

    def occ_ids(self, lit: int) -> set[int]:
        return self.occ.get(lit, set())

    def ids(self) -> list[int]:
        # ids are assigned monotonically, so insertion order is ascending
        return list(self.clauses)

    @property
    def has_empty_clause(self) -> bool:
        return any(not c for c in self.clauses.values())

    def max_mentioned_var(self) -> int:
        return max((abs(l) for c in self.clauses.values() for l in c), default=0)

    def clause_multiset(self):
        return tuple(sorted(self.clauses.values()))

    def copy(self) -> "CnfFormula":
        f = CnfFormula.__new__(CnfFormula)
        f.clauses = dict(self.clauses)
        f.lit_sets = dict(self.lit_sets)
        f.occ = {l: set(ids) for l, ids in self.occ.items()}
        f.num_vars = self.num_vars
        f._next_id = self._next_id
        return f

    def check_integrity(self):
        """Rebuild the occurrence index from scratch and compare."""
        occ: dict[int, set[int]] = {}
        for cid, clause in self.clauses.items():
            assert self.lit_sets[cid] == frozenset(clause)
            assert clause == tuple(sorted(set(clause), key=lit_key))
            for l in clause:
                occ.setdefault(l, set()).add(cid)
        assert occ == self.occ, "occurrence index out of sync"
        assert self.num_vars >= self.max_mentioned_var()
        ids = list(self.clauses)
        assert ids == sorted(ids)

    def __eq__(self, other):
        if not isinstance(other, CnfFormula):
            return NotImplemented
        return (self.num_vars == other.num_vars
                and list(self.clauses.values()) == list(other.clauses.values()))

    def __repr__(self):
        return f"CnfFormula(num_vars={self.num_vars}, clauses={list(self.clauses.values())})"


def bcp(formula: CnfFormula, assumptions=()) -> dict | None:
    """Unit propagation to fixpoint.

    Returns the propagated assignment, or None on conflict.  The fixpoint is
    order-independent; this implementation seeds from unit clauses plus the
    assumptions and propagates through the occurrence index.
    """
    assign: dict[int, bool] = {}
    queue = deque()

    def assert_lit(lit):
        var, val = abs(lit), lit > 0
        old = assign.get(var)
        if old is None:
            assign[var] = val
            queue.append(lit)
            return True
        return old == val

    for lit in assumptions:
        if not assert_lit(lit):
            return None
    for clause in formula.clauses.values():
        if not clause:
            return None
        if len(clause) == 1 and not assert_lit(clause[0]):
            return None

    while queue:
        lit = queue.popleft()
        for cid in sorted(formula.occ_ids(-lit)):
            clause = formula.clauses.get(cid)
            if clause is None:
                continue
            unassigned = None
            satisfied = False
            for l in clause:
                val = assign.get(abs(l))
                if val is None:
                    if unassigned is not None:
                        unassigned = 0  # two or more free literals
                        break
                    unassigned = l
                elif val == (l > 0):
                    satisfied = True
                    break
            if satisfied or unassigned == 0:
                continue
            if unassigned is None:
                return None
            if not assert_lit(unassigned):
                return None
    return assign


def propagate_units(formula: CnfFormula, assign: dict) -> CnfFormula:
    """Apply a top-level assignment: drop satisfied clauses, strip false
    literals, and keep one unit clause per assigned variable (so the result
    stays logically equivalent)."""
    for cid in formula.ids():
        clause = formula.clauses[cid]
        if clause_satisfied(clause, assign):
            formula.remove_clause(cid)
            continue
        kept = [l for l in clause if abs(l) not in assign]
        if len(kept) != len(clause):
            formula.replace_clause(cid, kept)
    for var in sorted(assign):
        formula.add_clause([var if assign[var] else -var])
    return formula


def failed_literal_probe(formula: CnfFormula):
    """Probe every literal; any literal whose assumption propagates to a
    conflict yields its negation as a learned unit, which is then applied.

    Probes run in the order 1, -1, 2, -2, ... and restart after each learned
    unit.  Returns ``(formula, learned_units)``; an unsatisfiable formula
    comes back containing the empty clause.
    """
    if formula.has_empty_clause:
        raise ValueError("formula already contains the empty clause")
    learned: list[int] = []

    def top_level():
        assign = bcp(formula)
        if assign is None:
            return None
        return assign

    while True:
        base = top_level()
        if base is None:
            formula.add_clause([])
            return formula, learned
        progress = False
        for var in range(1, formula.num_vars + 1):
            if var in base:
                continue
            if not formula.occ_ids(var) and not formula.occ_ids(-var):
                continue
            for lit in (var, -var):
                if bcp(formula, (lit,)) is None:
                    learned.append(-lit)
                    formula.add_clause([-lit])
                    assign = bcp(formula)
                    if assign is None:
                        formula.add_clause([])
                        return formula, learned
                    propagate_units(formula, assign)
                    progress = True
                    break
            if progress:
                break
        if not progress:
            if base:
                propagate_units(formula, base)
            return formula, learned


def pure_literal_elim(formula: CnfFormula, stack=None) -> CnfFormula:
    """Remove all clauses of literals whose complement never occurs, pushing
    each removed clause with the pure literal as its repair witness."""
    while True:
        pure = None
        for var in range(1, formula.num_vars + 1):
            for lit in (var, -var):
                if formula.occ_ids(lit) and not formula.occ_ids(-lit):
                    pure = lit
                    break
            if pure is not None:
                break
        if pure is None:
            return formula
        for cid in sorted(formula.occ_ids(pure)):
            clause = formula.remove_clause(cid)
            if stack is not None:
                stack.push_clause([(clause, pure)])


class BinaryImplicationGraph:
    """Implication digraph of the binary clauses: (a or b) contributes the
    edges -a -> b and -b -> a, so the edge set is closed under contraposition."""

    def __init__(self):
        self.succ: dict[int, set[int]] = {}

    def add_binary(self, a: int, b: int):
        self.succ.setdefault(-a, set()).add(b)
        self.succ.setdefault(-b, set()).add(a)

    def nodes(self) -> list[int]:
        names = set(self.succ)
        for targets in self.succ.values():
            names |= targets
        return sorted(names, key=lit_key)

    def successors(self, lit: int) -> list[int]:
        return sorted(self.succ.get(lit, ()), key=lit_key)

    def edges(self):
        return [(u, v) for u in self.nodes() for v in self.successors(u)]


def build_big(formula: CnfFormula) -> BinaryImplicationGraph:
    big = BinaryImplicationGraph()
    for clause in formula.clauses.values():
        if len(clause) == 2:
            big.add_binary(clause[0], clause[1])
    return big


def _scc_tarjan(big: BinaryImplicationGraph) -> list[list[int]]:
    """Iterative Tarjan over the implication graph, deterministic order."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0

    for root in big.nodes():
        if root in index:
            continue
        work = [(root, iter(big.successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for succ in it:
                if succ not in index:
                    index[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack.add(succ)
                    work.append((succ, iter(big.successors(succ))))
                    advanced = True
                    break
                if succ in on_stack:
                    low[node] = min(low[node], index[succ])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.append(member)
                    if member == node:
                        break
                sccs.append(comp)
    return sccs


def equivalent_literal_substitution(formula: CnfFormula):
    """Collapse strongly connected components of the implication graph onto a
    canonical representative (smallest variable, positive phase preferred).

    Returns ``(formula, substitution)``.  If some literal shares a component
    with its own negation the formula is unsatisfiable; the empty clause is
    added and the substitution is empty.  After substitution, tautologies are
    dropped and duplicate clauses merge down to their lowest id.
    """
    big = build_big(formula)
    subst: dict[int, int] = {}
    for comp in _scc_tarjan(big):
        members = set(comp)
        if any(-l in members for l in members):
            formula.add_clause([])
            return formula, {}
        if len(members) < 2:
            continue
        rep = min(members, key=lit_key)
        for l in members:
            if l != rep:
                subst[l] = rep
                subst[-l] = -rep
    if not subst:
        return formula, {}

    seen: dict[tuple, int] = {}
    for cid in formula.ids():
        clause, taut = normalize_clause(
            [subst.get(l, l) for l in formula.clauses[cid]])
        if taut:
            formula.remove_clause(cid)
            continue
        if clause != formula.clauses[cid]:
            formula.replace_clause(cid, clause)
        if clause in seen:
            formula.remove_clause(cid)
        else:
            seen[clause] = cid
    return formula, subst


def bounded_variable_elim(formula: CnfFormula, growth_bound: int = 0,
                          stack=None) -> CnfFormula:
    """Eliminate variables by resolution whenever the non-tautological
    resolvent count stays within the occurrence count plus ``growth_bound``.

    The variable's original clauses go onto the reconstruction stack; the
    eliminated variable is later assigned any value satisfying them.
    """
    if growth_bound < 0:
        raise ValueError("growth_bound must be >= 0")
    while True:
        eliminated = False
        for var in range(1, formula.num_vars + 1):
            pos = sorted(formula.occ_ids(var))
            neg = sorted(formula.occ_ids(-var))
            # single-phase variables are pure-literal territory, not resolution
            if not pos or not neg:
                continue
            resolvents = []
            for pid in pos:
                pc = formula.lit_sets[pid]
                for nid in neg:
                    merged = (pc | formula.lit_sets[nid]) - {var, -var}
                    if any(-l in merged for l in merged):
                        continue
                    resolvents.append(merged)
            if len(resolvents) > len(pos) + len(neg) + growth_bound:
                continue
            saved = [formula.clauses[cid] for cid in sorted(set(pos) | set(neg))]
            if stack is not None:
                stack.push_var(var, saved)
            for cid in sorted(set(pos) | set(neg)):
                formula.remove_clause(cid)
            for merged in resolvents:
                formula.add_clause(merged)
            eliminated = True
            if formula.has_empty_clause:
                return formula
            break
        if not eliminated:
            return formula
