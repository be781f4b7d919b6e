"""Boolean circuits: acyclic typed gate graphs with output constraints.

Gate ids are names (strings).  A circuit pairs a gate map with a list of
(gate, required value) constraints.  Satisfiability means some assignment to
the input gates makes every constrained gate evaluate to its required value.
"""

import itertools
from dataclasses import dataclass

from .oracle import DEFAULT_BOUND, BoundExceeded

TRUE = "true"
FALSE = "false"
INPUT = "input"
NOT = "not"
AND = "and"
OR = "or"
XOR = "xor"
EVEN = "even"
EQUIV = "equiv"
IMPLY = "imply"
ITE = "ite"
CARD = "card"

FUNCS = (TRUE, FALSE, INPUT, NOT, AND, OR, XOR, EVEN, EQUIV, IMPLY, ITE, CARD)

POS = 1
NEG = 2
BOTH = POS | NEG


class CircuitError(Exception):
    pass


class CycleError(CircuitError):
    pass


class ArityError(CircuitError):
    pass


class DuplicateDefinition(CircuitError):
    pass


class UndefinedGateError(CircuitError):
    pass


@dataclass(frozen=True)
class Gate:
    func: str
    children: tuple[str, ...] = ()
    lo: int | None = None
    hi: int | None = None


class Circuit:
    def __init__(self):
        self.gates: dict[str, Gate] = {}
        self.constraints: list[tuple[str, bool]] = []

    def add_gate(self, name, func, children=(), lo=None, hi=None):
        if name in self.gates:
            raise DuplicateDefinition(f"gate {name!r} defined twice")
        if func not in FUNCS:
            raise CircuitError(f"unknown gate function {func!r}")
        self.gates[name] = Gate(func, tuple(children), lo, hi)
        return name

    def add_input(self, name):
        return self.add_gate(name, INPUT)

    def add_constraint(self, name, value=True):
        self.constraints.append((name, bool(value)))

    def inputs(self):
        return [n for n, g in self.gates.items() if g.func == INPUT]

    def parent_index(self):
        parents: dict[str, list] = {n: [] for n in self.gates}
        for name, gate in self.gates.items():
            for pos, child in enumerate(gate.children):
                parents.setdefault(child, []).append((name, pos))
        return parents

    def fanout(self, name):
        return len(self.parent_index().get(name, ()))

    def copy(self):
        c = Circuit()
        c.gates = dict(self.gates)
        c.constraints = list(self.constraints)
        return c

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.gates == other.gates and self.constraints == other.constraints

    def __repr__(self):
        return f"Circuit({len(self.gates)} gates, {len(self.constraints)} constraints)"


_MIN_ARITY = {NOT: (1, 1), IMPLY: (2, 2), ITE: (3, 3),
              AND: (1, None), OR: (1, None), XOR: (1, None),
              EVEN: (1, None), EQUIV: (1, None), CARD: (1, None),
              TRUE: (0, 0), FALSE: (0, 0), INPUT: (0, 0)}


def validate(circuit: Circuit):
    """Check arities, references, and acyclicity.  Returns a deterministic
    topological order with children before parents."""
    for name, gate in circuit.gates.items():
        lo_a, hi_a = _MIN_ARITY[gate.func]
        n = len(gate.children)
        if n < lo_a or (hi_a is not None and n > hi_a):
            raise ArityError(f"gate {name!r}: {gate.func} with {n} children")
        if gate.func == CARD:
            if gate.lo is None or gate.hi is None or not 0 <= gate.lo <= gate.hi:
                raise ArityError(f"gate {name!r}: bad card bounds "
                                 f"{gate.lo}..{gate.hi}")
        for child in gate.children:
            if child not in circuit.gates:
                raise UndefinedGateError(f"gate {name!r} references "
                                         f"undefined {child!r}")
    for name, _ in circuit.constraints:
        if name not in circuit.gates:
            raise UndefinedGateError(f"constraint references undefined {name!r}")

    pending = {n: len(set(g.children)) for n, g in circuit.gates.items()}
    parents = circuit.parent_index()
    ready = sorted(n for n, k in pending.items() if k == 0)
    order = []
    seen_child: dict[str, set] = {n: set() for n in circuit.gates}
    while ready:
        name = ready.pop(0)
        order.append(name)
        for parent, _ in parents.get(name, ()):
            if name in seen_child[parent]:
                continue
            seen_child[parent].add(name)
            pending[parent] -= 1
            if pending[parent] == 0:
                # keep the ready list sorted for determinism
                lo, hi = 0, len(ready)
                while lo < hi:
                    mid = (lo + hi) // 2
                    if ready[mid] < parent:
                        lo = mid + 1
                    else:
                        hi = mid
                ready.insert(lo, parent)
    if len(order) != len(circuit.gates):
        stuck = min(n for n in circuit.gates if pending[n] > 0)
        # walk into the cycle to name a gate actually on it
        seen = []
        node = stuck
        while node not in seen:
            seen.append(node)
            node = next(ch for ch in circuit.gates[node].children
                        if pending.get(ch, 0) > 0)
        raise CycleError(f"gate {node!r} lies on a cycle")
    return order


def _gate_value(gate: Gate, vals):
    if gate.func == TRUE:
        return True
    if gate.func == FALSE:
        return False
    if gate.func == NOT:
        return not vals[0]
    if gate.func == AND:
        return all(vals)
    if gate.func == OR:
        return any(vals)
    if gate.func == XOR:
        return sum(vals) % 2 == 1
    if gate.func == EVEN:
        return sum(vals) % 2 == 0
    if gate.func == EQUIV:
        return all(v == vals[0] for v in vals)
    if gate.func == IMPLY:
        return (not vals[0]) or vals[1]
    if gate.func == ITE:
        return vals[1] if vals[0] else vals[2]
    if gate.func == CARD:
        return gate.lo <= sum(vals) <= gate.hi
    raise CircuitError(f"cannot evaluate {gate.func}")


def eval_circuit(circuit: Circuit, input_assign: dict) -> dict:
    """Value of every gate under a total input assignment."""
    values: dict[str, bool] = {}
    for name in validate(circuit):
        gate = circuit.gates[name]
        if gate.func == INPUT:
            if name not in input_assign:
                raise ValueError(f"input {name!r} not assigned")
            values[name] = bool(input_assign[name])
        else:
            values[name] = _gate_value(gate, [values[c] for c in gate.children])
    return values


def circuit_sat(circuit: Circuit, bound: int = DEFAULT_BOUND):
    """Exhaustive search over input assignments; first satisfying assignment
    in binary counting order (first input least significant), else None."""
    order = validate(circuit)
    names = sorted(circuit.inputs())
    if len(names) > bound:
        raise BoundExceeded(f"{len(names)} inputs exceeds bound {bound}")
    for k in range(1 << len(names)):
        assign = {n: bool((k >> i) & 1) for i, n in enumerate(names)}
        values: dict[str, bool] = {}
        for name in order:
            gate = circuit.gates[name]
            if gate.func == INPUT:
                values[name] = assign[name]
            else:
                values[name] = _gate_value(gate, [values[c] for c in gate.children])
        if all(values[n] == req for n, req in circuit.constraints):
            return assign
    return None


def _flip(pol):
    return ((pol & POS) and NEG) | ((pol & NEG) and POS)


def polarity(circuit: Circuit) -> dict[str, int]:
    """Least polarity map: constrained-true gates seed +, constrained-false
    seed -, and marks flow to children (NOT flips, AND/OR pass through, IMPLY
    flips its antecedent, parity/equivalence/cardinality force both, ITE
    forces both on the condition and passes through to the branches)."""
    order = validate(circuit)
    pol = {name: 0 for name in circuit.gates}
    for name, req in circuit.constraints:
        pol[name] |= POS if req else NEG
    for name in reversed(order):
        p = pol[name]
        if not p:
            continue
        gate = circuit.gates[name]
        if gate.func == NOT:
            pol[gate.children[0]] |= _flip(p)
        elif gate.func in (AND, OR):
            for child in gate.children:
                pol[child] |= p
        elif gate.func == IMPLY:
            pol[gate.children[0]] |= _flip(p)
            pol[gate.children[1]] |= p
        elif gate.func in (XOR, EVEN, EQUIV, CARD):
            for child in gate.children:
                pol[child] |= BOTH
        elif gate.func == ITE:
            pol[gate.children[0]] |= BOTH
            pol[gate.children[1]] |= p
            pol[gate.children[2]] |= p
    return pol


def polarity_is_closed(circuit: Circuit, pol: dict) -> bool:
    """Check a candidate polarity map against the propagation rules."""
    for name, req in circuit.constraints:
        if not pol.get(name, 0) & (POS if req else NEG):
            return False
    for name, gate in circuit.gates.items():
        p = pol.get(name, 0)
        if not p:
            continue
        need = {}
        if gate.func == NOT:
            need[gate.children[0]] = _flip(p)
        elif gate.func in (AND, OR):
            need = {c: p for c in gate.children}
        elif gate.func == IMPLY:
            need[gate.children[0]] = _flip(p)
            need[gate.children[1]] = need.get(gate.children[1], 0) | p
        elif gate.func in (XOR, EVEN, EQUIV, CARD):
            need = {c: BOTH for c in gate.children}
        elif gate.func == ITE:
            need[gate.children[0]] = BOTH
            for c in gate.children[1:]:
                need[c] = need.get(c, 0) | p
        for child, marks in need.items():
            if pol.get(child, 0) & marks != marks:
                return False
    return True


def coi_reduce(circuit: Circuit) -> Circuit:
    """Keep exactly the gates reachable from constrained gates."""
    reachable = set()
    stack = sorted({name for name, _ in circuit.constraints})
    while stack:
        name = stack.pop()
        if name in reachable:
            continue
        reachable.add(name)
        stack.extend(circuit.gates[name].children)
    out = Circuit()
    out.gates = {n: g for n, g in circuit.gates.items() if n in reachable}
    out.constraints = list(circuit.constraints)
    return out


def _card_surjective(gate: Gate) -> bool:
    n = len(gate.children)
    return gate.lo <= n and (gate.lo > 0 or gate.hi < n)


def nsi_reduce(circuit: Circuit) -> Circuit:
    """Replace a gate over pairwise-distinct, non-shared, unconstrained free
    inputs by a fresh free input (same id), deleting the consumed inputs.
    Cardinality gates qualify only when their value is not constant."""
    out = circuit.copy()
    while True:
        parents = out.parent_index()
        constrained = {name for name, _ in out.constraints}
        target = None
        for name in sorted(out.gates):
            gate = out.gates[name]
            if gate.func in (INPUT, TRUE, FALSE):
                continue
            kids = gate.children
            if len(set(kids)) != len(kids):
                continue
            if not all(out.gates[c].func == INPUT
                       and len(parents[c]) == 1
                       and c not in constrained
                       for c in kids):
                continue
            if gate.func == CARD and not _card_surjective(gate):
                continue
            target = name
            break
        if target is None:
            return out
        for child in out.gates[target].children:
            del out.gates[child]
        out.gates[target] = Gate(INPUT)


def _safe_const(circuit, parents, constrained, name, value, memo):
    """Can `name` collapse to the constant `value` using only shape-safe
    rewrites (child removal in AND/OR, NOT flip, IMPLY short-circuit)?"""
    key = (name, value)
    if key in memo:
        return memo[key]
    memo[key] = True  # acyclic upward, optimistic for diamonds
    ok = all(req == value for req in constrained.get(name, ()))
    if ok:
        for parent, pos in parents.get(name, ()):
            gate = circuit.gates[parent]
            if gate.func in (AND, OR):
                # conservatively assume the parent may collapse too
                ok = _safe_const(circuit, parents, constrained, parent, value, memo)
            elif gate.func == NOT:
                ok = _safe_const(circuit, parents, constrained, parent,
                                 not value, memo)
            elif gate.func == IMPLY:
                if (pos == 0 and value is False) or (pos == 1 and value is True):
                    ok = _safe_const(circuit, parents, constrained, parent,
                                     True, memo)
                else:
                    ok = False
            else:  # ITE branches and parity/equivalence/cardinality positions
                ok = False
            if not ok:
                break
    memo[key] = ok
    return ok


def mir_reduce(circuit: Circuit):
    """Fix inputs that occur with a single polarity and fold the resulting
    constants through the circuit.  Only shape-safe folds are performed, so an
    input whose constant would land in an unfoldable position is left alone.

    Returns (circuit, fixed_inputs).
    """
    out = circuit.copy()
    fixed: dict[str, bool] = {}
    while True:
        pol = polarity(out)
        parents = out.parent_index()
        constrained: dict[str, list] = {}
        for name, req in out.constraints:
            constrained.setdefault(name, []).append(req)
        memo: dict = {}
        batch = []
        for name in sorted(out.inputs()):
            if pol[name] == POS and _safe_const(out, parents, constrained,
                                                name, True, memo):
                batch.append((name, True))
            elif pol[name] == NEG and _safe_const(out, parents, constrained,
                                                  name, False, memo):
                batch.append((name, False))
        if not batch:
            return out, fixed

        queue = list(batch)
        for name, value in batch:
            fixed[name] = value
            del out.gates[name]
        while queue:
            name, value = queue.pop(0)
            out.constraints = [(n, r) for n, r in out.constraints
                               if not (n == name and r == value)]
            holders = [(p, g) for p, g in out.gates.items() if name in g.children]
            for pname, gate in holders:
                if gate.func in (AND, OR):
                    absorbing = (gate.func == AND and not value) or \
                                (gate.func == OR and value)
                    if absorbing:
                        out.gates[pname] = Gate(TRUE if value else FALSE)
                        queue.append((pname, value))
                        continue
                    remaining = tuple(c for c in gate.children if c != name)
                    if remaining:
                        out.gates[pname] = Gate(gate.func, remaining)
                    else:
                        const = gate.func == AND  # empty AND true, empty OR false
                        out.gates[pname] = Gate(TRUE if const else FALSE)
                        queue.append((pname, const))
                elif gate.func == NOT:
                    out.gates[pname] = Gate(TRUE if not value else FALSE)
                    queue.append((pname, not value))
                elif gate.func == IMPLY:
                    # only the short-circuiting positions are ever folded
                    assert (gate.children[0] == name and value is False) or \
                           (gate.children[1] == name and value is True)
                    out.gates[pname] = Gate(TRUE)
                    queue.append((pname, True))
                else:
                    raise CircuitError(
                        f"constant folded into unfoldable gate {pname!r}")


def simplify_fixpoint(circuit: Circuit, passes=("coi", "nsi", "mir")):
    """Cycle COI, NSI, and MIR until the circuit stops changing.

    Returns (circuit, fixed_inputs): inputs MIR fixed are folded away from the
    circuit and reported in the sidecar map.
    """
    current = circuit.copy()
    fixed: dict[str, bool] = {}
    while True:
        before_gates = dict(current.gates)
        before_constraints = list(current.constraints)
        if "coi" in passes:
            current = coi_reduce(current)
        if "nsi" in passes:
            current = nsi_reduce(current)
        if "mir" in passes:
            current, newly = mir_reduce(current)
            fixed.update(newly)
        if current.gates == before_gates and \
                current.constraints == before_constraints:
            return current, fixed


def normalize_circuit(circuit: Circuit) -> Circuit:
    """Rewrite to the encodable subset: parity gates become binary XOR chains
    (EVEN as NOT of the chain), n-ary EQUIV becomes a conjunction of binary
    comparisons against the first child, and CARD expands through the usual
    if-then-else recursion with memoized subproblems.  Gate values are
    preserved on every input assignment; surviving gates keep their ids."""
    out = Circuit()
    mapping: dict[str, str] = {}
    taken = set(circuit.gates)
    counter = itertools.count()

    def fresh(base):
        while True:
            name = f"{base}_n{next(counter)}"
            if name not in taken:
                taken.add(name)
                return name

    def emit(name, func, children=(), lo=None, hi=None):
        out.add_gate(name, func, children, lo, hi)
        return name

    def xor_tree(kids, top_name=None):
        if len(kids) == 1:
            return kids[0]
        mid = (len(kids) + 1) // 2
        left = xor_tree(kids[:mid])
        right = xor_tree(kids[mid:])
        return emit(top_name or fresh("xor"), XOR, (left, right))

    for name in validate(circuit):
        gate = circuit.gates[name]
        kids = [mapping[c] for c in gate.children]
        func = gate.func
        if func in (INPUT, TRUE, FALSE):
            mapping[name] = emit(name, func)
        elif func in (NOT, AND, OR, IMPLY, ITE):
            mapping[name] = emit(name, func, kids)
        elif func == XOR:
            if len(kids) == 1:
                mapping[name] = kids[0]
            else:
                mapping[name] = xor_tree(kids, top_name=name)
        elif func == EVEN:
            if len(kids) == 1:
                mapping[name] = emit(name, NOT, (kids[0],))
            else:
                mapping[name] = emit(name, NOT, (xor_tree(kids),))
        elif func == EQUIV:
            if len(kids) == 1:
                mapping[name] = emit(name, TRUE)
            elif len(kids) == 2:
                mapping[name] = emit(name, EQUIV, kids)
            else:
                pairs = [emit(fresh("eq"), EQUIV, (kids[0], other))
                         for other in kids[1:]]
                mapping[name] = emit(name, AND, pairs)
        elif func == CARD:
            mapping[name] = _expand_card(name, kids, gate.lo, gate.hi,
                                         emit, fresh)
        else:
            raise CircuitError(f"unexpected function {func}")

    for cname, req in circuit.constraints:
        out.add_constraint(mapping[cname], req)
    return out


def _expand_card(name, kids, lo, hi, emit, fresh):
    memo: dict = {}
    consts: dict[bool, str] = {}

    def const(value):
        if value not in consts:
            consts[value] = emit(fresh("c"), TRUE if value else FALSE)
        return consts[value]

    def build(lo, hi, i):
        rem = len(kids) - i
        if hi < 0 or lo > rem:
            return False
        if lo <= 0 and hi >= rem:
            return True
        key = (max(lo, 0), min(hi, rem), i)
        if key in memo:
            return memo[key]
        cond = kids[i]
        then = build(lo - 1, hi - 1, i + 1)
        other = build(lo, hi, i + 1)
        if then is True and other is True:
            node = True
        elif then is False and other is False:
            node = False
        elif then is True and other is False:
            node = cond
        elif then is False and other is True:
            node = emit(fresh("n"), NOT, (cond,))
        elif then is True:
            node = emit(fresh("o"), OR, (cond, other))
        elif other is True:
            node = emit(fresh("i"), IMPLY, (cond, then))
        elif then is False:
            node = emit(fresh("a"), AND, (emit(fresh("n"), NOT, (cond,)), other))
        elif other is False:
            node = emit(fresh("a"), AND, (cond, then))
        else:
            node = emit(fresh("t"), ITE, (cond, then, other))
        memo[key] = node
        return node

    result = build(lo, hi, 0)
    if result is True or result is False:
        return emit(name, TRUE if result else FALSE)
    # the top of the expansion is an existing node: alias the card gate to it
    return result
