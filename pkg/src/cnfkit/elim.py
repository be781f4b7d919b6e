"""Clause elimination procedures.

The extension operators grow a clause without changing its meaning relative
to the rest of the formula: *hidden* literal addition follows binary clauses,
*asymmetric* literal addition follows arbitrary clauses.  On top of them sit
four elimination families (tautology, subsumption, blocked, covered), each
available plain, hidden, or asymmetric.  Removals that are not implied by the
remaining formula push witness steps onto a reconstruction stack so models of
the reduced formula can be repaired afterwards.
"""

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum

from .formula import (CnfFormula, bounded_variable_elim,
                      equivalent_literal_substitution, failed_literal_probe,
                      lit_key, pure_literal_elim)
from .reconstruct import ReconstructionStack, reconstruct_model

__all__ = [
    "ExtensionMode", "TechniqueId", "TechniqueStats", "ElimReport",
    "PipelineConfig", "extend_clause", "is_tautology", "blocking_literal",
    "covered_literal_additions", "CoveredOutcome",
    "eliminate_tautologies", "eliminate_subsumed", "eliminate_blocked",
    "eliminate_covered", "is_extended_tautology", "find_subsumer",
    "is_blocked", "run_pipeline", "reconstruct_model",
]


class ExtensionMode(Enum):
    NONE = "none"
    HIDDEN = "hidden"
    ASYMMETRIC = "asymmetric"


class TechniqueId(str, Enum):
    TE = "te"
    HTE = "hte"
    ATE = "ate"
    SE = "se"
    HSE = "hse"
    ASE = "ase"
    BCE = "bce"
    HBCE = "hbce"
    ABCE = "abce"
    CCE = "cce"
    HCCE = "hcce"
    ACCE = "acce"
    PL = "pl"
    FLE = "fle"
    ELS = "els"
    VE = "ve"


_MODE_OF = {
    TechniqueId.TE: ExtensionMode.NONE, TechniqueId.HTE: ExtensionMode.HIDDEN,
    TechniqueId.ATE: ExtensionMode.ASYMMETRIC,
    TechniqueId.SE: ExtensionMode.NONE, TechniqueId.HSE: ExtensionMode.HIDDEN,
    TechniqueId.ASE: ExtensionMode.ASYMMETRIC,
    TechniqueId.BCE: ExtensionMode.NONE, TechniqueId.HBCE: ExtensionMode.HIDDEN,
    TechniqueId.ABCE: ExtensionMode.ASYMMETRIC,
    TechniqueId.CCE: ExtensionMode.NONE, TechniqueId.HCCE: ExtensionMode.HIDDEN,
    TechniqueId.ACCE: ExtensionMode.ASYMMETRIC,
}


@dataclass
class TechniqueStats:
    clauses_removed: int = 0
    clauses_added: int = 0
    literals_added: int = 0
    rounds: int = 0
    seconds: float = 0.0


class ElimReport:
    """Per-technique counters; removed minus added matches the size delta."""

    def __init__(self):
        self.techniques: dict[str, TechniqueStats] = {}
        self.clauses_before = 0
        self.clauses_after = 0

    def stats(self, technique) -> TechniqueStats:
        key = technique.value if isinstance(technique, TechniqueId) else str(technique)
        return self.techniques.setdefault(key, TechniqueStats())

    @property
    def total_removed(self):
        return sum(s.clauses_removed for s in self.techniques.values())

    @property
    def total_added(self):
        return sum(s.clauses_added for s in self.techniques.values())


@contextmanager
def _timed(stats: TechniqueStats):
    start = time.perf_counter()
    try:
        yield
    finally:
        stats.seconds += time.perf_counter() - start


def is_tautology(lits) -> bool:
    s = set(lits)
    return any(-l in s for l in s)


def _extend(formula, base, exclude_id, mode, early_exit=True):
    """Extend a working clause per the mode.  Returns (literal set, tautology
    flag, number of literals added).  With early_exit the function may stop as
    soon as a complementary pair appears; otherwise it runs to the full
    fixpoint."""
    wset = set(base)
    taut = any(-l in wset for l in wset)
    added = 0
    if mode is ExtensionMode.NONE or (taut and early_exit):
        return wset, taut, added

    if mode is ExtensionMode.HIDDEN:
        queue = sorted(wset, key=lit_key)
        while queue:
            l0 = queue.pop(0)
            for cid in sorted(formula.occ_ids(l0)):
                if cid == exclude_id:
                    continue
                clause = formula.clauses[cid]
                if len(clause) != 2:
                    continue
                other = clause[1] if clause[0] == l0 else clause[0]
                add = -other
                if add in wset:
                    continue
                if -add in wset:
                    taut = True
                wset.add(add)
                added += 1
                queue.append(add)
                if taut and early_exit:
                    return wset, True, added
        return wset, taut, added

    # asymmetric: add the complement of l whenever another clause minus l
    # is contained in the working clause
    changed = True
    while changed:
        changed = False
        for cid in formula.ids():
            if cid == exclude_id:
                continue
            cset = formula.lit_sets[cid]
            diff = cset - wset
            if len(diff) > 1:
                continue
            if len(diff) == 1:
                (l,) = diff
                if -l not in wset:
                    wset.add(-l)
                    added += 1
                    changed = True
            else:  # clause entirely contained: every literal's complement applies
                taut = True
                for l in sorted(cset, key=lit_key):
                    if -l not in wset:
                        wset.add(-l)
                        added += 1
                        changed = True
                    if early_exit:
                        return wset, True, added
        if taut and early_exit:
            return wset, True, added
    return wset, taut, added


def extend_clause(formula, cid, mode, *, early_exit=True):
    """Hidden/asymmetric extension of one formula clause (the clause itself is
    excluded from the search).  Always a superset of the original clause."""
    wset, _, _ = _extend(formula, formula.clauses[cid], cid, mode, early_exit)
    return tuple(sorted(wset, key=lit_key))


def _resolvent_is_taut(wset, lit, cset):
    """Is (W | (C' - {-lit})) - {lit} a tautology?  W is assumed
    complement-free; pairs internal to C' are checked."""
    for x in cset:
        if x == lit or x == -lit:
            continue
        if -x in wset and -x != lit:
            return True
        if -x in cset and -x != lit and -x != -lit:
            return True
    return False


def blocking_literal(formula, lits, exclude_id):
    """Smallest literal of the clause all of whose resolvents against the
    rest of the formula are tautologies; None if there is none.  A literal
    whose complement never occurs qualifies vacuously."""
    wset = set(lits)
    for lit in sorted(wset, key=lit_key):
        for cid in sorted(formula.occ_ids(-lit)):
            if cid == exclude_id:
                continue
            if not _resolvent_is_taut(wset, lit, formula.lit_sets[cid]):
                break
        else:
            return lit
    return None


@dataclass
class CoveredOutcome:
    removable: bool
    witness: int | None
    lits: tuple[int, ...]
    steps: list = field(default_factory=list)


def _covered(formula, wset, exclude_id):
    """Covered literal additions to fixpoint.

    Probes each literal in canonical order.  A literal with no resolution
    candidates makes the clause removable on the spot; otherwise the literals
    common to all candidates are added (recording the probed literal as the
    step witness), and an addition that completes a complementary pair also
    makes the clause removable.  Each recorded step snapshots the working
    clause as it was when the step was taken, which is what replay needs.
    """
    steps = []
    added = 0
    while True:
        progress = False
        for lit in sorted(wset, key=lit_key):
            candidates = []
            for cid in sorted(formula.occ_ids(-lit)):
                if cid == exclude_id:
                    continue
                cset = formula.lit_sets[cid]
                if not _resolvent_is_taut(wset, lit, cset):
                    candidates.append(cset)
            if not candidates:
                steps.append((tuple(sorted(wset, key=lit_key)), lit))
                return True, lit, wset, steps, added
            covered = set(candidates[0])
            for cset in candidates[1:]:
                covered &= cset
            covered.discard(-lit)
            new = covered - wset
            if not new:
                continue
            steps.append((tuple(sorted(wset, key=lit_key)), lit))
            wset |= new
            added += len(new)
            if any(-k in wset for k in new):
                return True, lit, wset, steps, added
            progress = True
        if not progress:
            return False, None, wset, steps, added


def covered_literal_additions(formula, cid) -> CoveredOutcome:
    removable, witness, wset, steps, _ = _covered(
        formula, set(formula.clauses[cid]), cid)
    return CoveredOutcome(removable, witness,
                          tuple(sorted(wset, key=lit_key)), steps)


def eliminate_tautologies(formula, mode=ExtensionMode.NONE, report=None):
    """TE / HTE / ATE: drop clauses whose extension contains a complementary
    pair.  Pure deletion; the removed clause is implied by the rest."""
    stats = _stats_for(report, TechniqueId.TE, mode)
    with _timed(stats):
        changed = True
        while changed:
            stats.rounds += 1
            changed = False
            for cid in formula.ids():
                _, taut, added = _extend(formula, formula.clauses[cid], cid, mode)
                stats.literals_added += added
                if taut:
                    formula.remove_clause(cid)
                    stats.clauses_removed += 1
                    changed = True
    return formula


def eliminate_subsumed(formula, mode=ExtensionMode.NONE, report=None):
    """SE / HSE / ASE: drop a clause whose extension is a superset of some
    other clause.  Between duplicate clauses the lower id survives."""
    stats = _stats_for(report, TechniqueId.SE, mode)
    with _timed(stats):
        changed = True
        while changed:
            stats.rounds += 1
            changed = False
            for cid in formula.ids():
                if cid not in formula.clauses:
                    continue
                ext, _, added = _extend(formula, formula.clauses[cid], cid, mode,
                                        early_exit=False)
                stats.literals_added += added
                own = formula.lit_sets[cid]
                if _find_subsumer_of(formula, cid, own, ext) is not None:
                    formula.remove_clause(cid)
                    stats.clauses_removed += 1
                    changed = True
    return formula


def _find_subsumer_of(formula, cid, own, ext):
    for oid in formula.ids():
        if oid == cid:
            continue
        oset = formula.lit_sets[oid]
        if oset <= ext and (oset != own or oid < cid):
            return oid
    return None


def eliminate_blocked(formula, mode=ExtensionMode.NONE, stack=None,
                      report=None, scan_order=None):
    """BCE / HBCE / ABCE: remove clauses whose extension has a blocking
    literal.  Each removal pushes (extension, blocking literal) so the witness
    can be flipped during reconstruction; tautological extensions are deleted
    outright."""
    stats = _stats_for(report, TechniqueId.BCE, mode)
    base_order = list(scan_order) if scan_order is not None else None
    with _timed(stats):
        changed = True
        while changed:
            stats.rounds += 1
            changed = False
            ids = base_order if base_order is not None else formula.ids()
            for cid in ids:
                if cid not in formula.clauses:
                    continue
                wset, taut, added = _extend(formula, formula.clauses[cid], cid, mode)
                stats.literals_added += added
                if taut:
                    formula.remove_clause(cid)
                    stats.clauses_removed += 1
                    changed = True
                    continue
                lit = blocking_literal(formula, wset, cid)
                if lit is not None:
                    if stack is not None:
                        stack.push_clause(
                            [(tuple(sorted(wset, key=lit_key)), lit)])
                    formula.remove_clause(cid)
                    stats.clauses_removed += 1
                    changed = True
    return formula


def eliminate_covered(formula, mode=ExtensionMode.NONE, stack=None, report=None):
    """CCE / HCCE / ACCE: alternate the mode's extension with covered literal
    additions until the working clause is removable, tautological, or stable.

    A tautology reached through the extension alone is a pure deletion, but if
    covered additions contributed, the accumulated steps are pushed because
    those additions are only satisfiability-preserving with their witnesses.
    """
    stats = _stats_for(report, TechniqueId.CCE, mode)
    with _timed(stats):
        changed = True
        while changed:
            stats.rounds += 1
            changed = False
            for cid in formula.ids():
                if cid not in formula.clauses:
                    continue
                wset = set(formula.clauses[cid])
                steps = []
                while True:
                    before = set(wset)
                    wset, taut, added = _extend(formula, wset, cid, mode)
                    stats.literals_added += added
                    if taut:
                        if steps and stack is not None:
                            stack.push_clause(steps)
                        formula.remove_clause(cid)
                        stats.clauses_removed += 1
                        changed = True
                        break
                    removable, _, wset, csteps, cadded = _covered(formula, wset, cid)
                    stats.literals_added += cadded
                    steps.extend(csteps)
                    if removable:
                        if stack is not None:
                            stack.push_clause(steps)
                        formula.remove_clause(cid)
                        stats.clauses_removed += 1
                        changed = True
                        break
                    if wset == before:
                        break
    return formula


def _stats_for(report, base, mode):
    family = {
        TechniqueId.TE: (TechniqueId.TE, TechniqueId.HTE, TechniqueId.ATE),
        TechniqueId.SE: (TechniqueId.SE, TechniqueId.HSE, TechniqueId.ASE),
        TechniqueId.BCE: (TechniqueId.BCE, TechniqueId.HBCE, TechniqueId.ABCE),
        TechniqueId.CCE: (TechniqueId.CCE, TechniqueId.HCCE, TechniqueId.ACCE),
    }[base]
    idx = (ExtensionMode.NONE, ExtensionMode.HIDDEN,
           ExtensionMode.ASYMMETRIC).index(mode)
    tid = family[idx]
    return report.stats(tid) if report is not None else TechniqueStats()


# --- predicates used by the hierarchy property suites -----------------------

def is_extended_tautology(formula, cid, mode):
    _, taut, _ = _extend(formula, formula.clauses[cid], cid, mode,
                         early_exit=False)
    return taut


def find_subsumer(formula, cid, mode):
    ext, _, _ = _extend(formula, formula.clauses[cid], cid, mode,
                        early_exit=False)
    return _find_subsumer_of(formula, cid, formula.lit_sets[cid], ext)


def is_blocked(formula, cid, mode):
    """Removable by the blocked-clause rule under the given extension mode
    (tautological extension counts)."""
    wset, taut, _ = _extend(formula, formula.clauses[cid], cid, mode)
    return taut or blocking_literal(formula, wset, cid) is not None


# --- pipeline ----------------------------------------------------------------

@dataclass
class PipelineConfig:
    global_fixpoint: bool = False
    oracle_bound: int = 20
    strict_parsing: bool = False
    ve_growth_bound: int = 0


def run_pipeline(formula: CnfFormula, order, config=None):
    """Apply each technique to fixpoint in the given order.

    Returns (formula, stack, report).  Unsatisfiability discovered by a step
    surfaces immediately as an empty clause in the result.  With
    config.global_fixpoint the whole order repeats until nothing changes.
    """
    config = config or PipelineConfig()
    order = [TechniqueId(t) for t in order]
    if len(set(order)) != len(order):
        raise ValueError("techniques in a pipeline must be distinct")
    stack = ReconstructionStack()
    report = ElimReport()
    report.clauses_before = len(formula.clauses)

    while True:
        signature = formula.clause_multiset()
        for tid in order:
            if formula.has_empty_clause:
                break
            _apply_technique(formula, tid, config, stack, report)
            if formula.has_empty_clause:
                break
        if formula.has_empty_clause:
            break
        if not config.global_fixpoint or formula.clause_multiset() == signature:
            break

    report.clauses_after = len(formula.clauses)
    return formula, stack, report


def _apply_technique(formula, tid, config, stack, report):
    mode = _MODE_OF.get(tid)
    if tid in (TechniqueId.TE, TechniqueId.HTE, TechniqueId.ATE):
        eliminate_tautologies(formula, mode, report)
    elif tid in (TechniqueId.SE, TechniqueId.HSE, TechniqueId.ASE):
        eliminate_subsumed(formula, mode, report)
    elif tid in (TechniqueId.BCE, TechniqueId.HBCE, TechniqueId.ABCE):
        eliminate_blocked(formula, mode, stack, report)
    elif tid in (TechniqueId.CCE, TechniqueId.HCCE, TechniqueId.ACCE):
        eliminate_covered(formula, mode, stack, report)
    else:
        stats = report.stats(tid)
        before = len(formula.clauses)
        with _timed(stats):
            stats.rounds += 1
            if tid is TechniqueId.PL:
                pure_literal_elim(formula, stack)
            elif tid is TechniqueId.FLE:
                failed_literal_probe(formula)
            elif tid is TechniqueId.VE:
                bounded_variable_elim(formula, config.ve_growth_bound, stack)
            elif tid is TechniqueId.ELS:
                while True:
                    _, subst = equivalent_literal_substitution(formula)
                    if not subst:
                        break
                    for var in sorted({abs(l) for l in subst}):
                        rep = subst[var]
                        stack.push_var(var, [
                            tuple(sorted((-var, rep), key=lit_key)),
                            tuple(sorted((var, -rep), key=lit_key)),
                        ])
                    if formula.has_empty_clause:
                        break
        # net accounting keeps removed-added equal to the size delta
        after = len(formula.clauses)
        if after < before:
            stats.clauses_removed += before - after
        else:
            stats.clauses_added += after - before
