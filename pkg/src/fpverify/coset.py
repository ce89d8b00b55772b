"""Todd-Coxeter coset enumeration.

Enumerates cosets of a finitely generated subgroup (possibly trivial) in a
finitely presented group.  Strategies: HLT, HLT with lookahead (default),
and Felsch.  Completion yields the subgroup index and a complete coset
table; hitting the coset limit is reported as a result, not an exception.

The table layout follows the standard scheme: one column per generator and
per inverse generator, rows are cosets (0-based internally, coset 0 is the
subgroup; reported statistics use the 1-based convention only in printing).
Coincidences are handled by a union-find array processed to exhaustion
before any new coset is defined.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .presentation import Presentation
from .words import Word

STRATEGIES = ("hlt", "hlt-lookahead", "felsch")
DEFAULT_MAX_COSETS = 1_000_000

# dead-coset fraction that triggers table compaction
COMPACTION_THRESHOLD = 0.5


class _LimitReached(Exception):
    pass


@dataclass
class EnumerationResult:
    status: str                 # "Completed" | "LimitExceeded"
    index: int | None
    cosets_defined_total: int
    cosets_live_max: int
    coincidences: int
    strategy: str
    elapsed_ms: float
    table: "CosetTable | None" = None

    @property
    def completed(self) -> bool:
        return self.status == "Completed"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "index": self.index,
            "cosets_defined_total": self.cosets_defined_total,
            "cosets_live_max": self.cosets_live_max,
            "coincidences": self.coincidences,
            "strategy": self.strategy,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


class CosetTable:
    """Partial action table of generators on cosets with coincidence merging."""

    def __init__(self, presentation: Presentation, subgroup_gens=(),
                 max_cosets: int = DEFAULT_MAX_COSETS):
        if max_cosets < 1:
            raise ValueError("max_cosets must be >= 1")
        self.presentation = presentation
        self.gens = presentation.generators
        self.ncols = 2 * len(self.gens)
        self.col = {}
        for i, g in enumerate(self.gens):
            self.col[(g, 1)] = 2 * i
            self.col[(g, -1)] = 2 * i + 1
        self.max_cosets = max_cosets

        # relators as column sequences, shortest first for scanning
        rels = sorted(presentation.relators, key=len)
        self.relator_cols = [self._word_cols(r) for r in rels]
        for w in subgroup_gens:
            unknown = w.generators() - set(self.gens)
            if unknown:
                raise ValueError(f"subgroup word {w} uses unknown generators {unknown}")
        self.subgroup_cols = [self._word_cols(w) for w in subgroup_gens]

        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.p: list[int] = [0]       # union-find, p[i] <= i, coset 0 is root
        self.live_count = 1
        self.defined_total = 1
        self.live_max = 1
        self.coincidence_count = 0
        self.track_deductions = False
        self.deductions: list[tuple[int, int]] = []
        self.complete = False

    def _word_cols(self, w: Word) -> list[int]:
        return [self.col[let] for let in w]

    # -- basic operations ---------------------------------------------------

    def rep(self, k: int) -> int:
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def is_live(self, k: int) -> bool:
        return self.p[k] == k

    def live_cosets(self) -> list[int]:
        return [i for i in range(len(self.table)) if self.p[i] == i]

    def define(self, alpha: int, x: int) -> int:
        if self.live_count >= self.max_cosets:
            raise _LimitReached
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(beta)
        self.table[alpha][x] = beta
        self.table[beta][x ^ 1] = alpha
        self.live_count += 1
        self.defined_total += 1
        self.live_max = max(self.live_max, self.live_count)
        return beta

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k = self.rep(k)
        l = self.rep(l)
        if k == l:
            return
        lo, hi = (k, l) if k < l else (l, k)
        self.p[hi] = lo
        self.live_count -= 1
        self.coincidence_count += 1
        queue.append(hi)

    def coincidence(self, alpha: int, beta: int) -> None:
        queue: list[int] = []
        self._merge(alpha, beta, queue)
        qi = 0
        table = self.table
        while qi < len(queue):
            gamma = queue[qi]
            qi += 1
            row = table[gamma]
            for x in range(self.ncols):
                delta = row[x]
                if delta is None:
                    continue
                table[delta][x ^ 1] = None
                mu = self.rep(gamma)
                nu = self.rep(delta)
                if table[mu][x] is not None:
                    self._merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    self._merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu
                    if self.track_deductions:
                        self.deductions.append((mu, x))

    def scan_and_fill(self, alpha: int, word: list[int]) -> None:
        """HLT scan of word at alpha, defining cosets as needed."""
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j:
                nxt = table[f][word[i]]
                if nxt is None:
                    break
                f, i = nxt, i + 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i:
                prv = table[b][word[j] ^ 1]
                if prv is None:
                    break
                b, j = prv, j - 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                if self.track_deductions:
                    self.deductions.append((f, word[i]))
                return
            self.define(f, word[i])

    def scan(self, alpha: int, word: list[int]) -> None:
        """Scan without defining; used by lookahead and Felsch deductions.

        Closes the trace by a deduction when exactly one entry is missing,
        or merges cosets when the two ends disagree.
        """
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while i <= j:
            nxt = table[f][word[i]]
            if nxt is None:
                break
            f, i = nxt, i + 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i:
            prv = table[b][word[j] ^ 1]
            if prv is None:
                break
            b, j = prv, j - 1
        if j < i:
            self.coincidence(f, b)
        elif j == i:
            table[f][word[i]] = b
            table[b][word[i] ^ 1] = f
            if self.track_deductions:
                self.deductions.append((f, word[i]))
        # else incomplete: nothing to do without defining

    # -- maintenance --------------------------------------------------------

    def compact(self) -> list[int | None]:
        """Drop dead cosets, renumber live ones; returns old->new mapping."""
        mapping: list[int | None] = [None] * len(self.table)
        new = 0
        for i in range(len(self.table)):
            if self.p[i] == i:
                mapping[i] = new
                new += 1
        new_table = []
        for i in range(len(self.table)):
            if mapping[i] is None:
                continue
            row = self.table[i]
            new_table.append([
                None if e is None else mapping[self.rep(e)] for e in row
            ])
        self.deductions = [
            (mapping[self.rep(a)], x) for a, x in self.deductions
        ]
        self.table = new_table
        self.p = list(range(new))
        return mapping

    def maybe_compact(self) -> list[int | None] | None:
        dead = len(self.table) - self.live_count
        if len(self.table) > 64 and dead / len(self.table) > COMPACTION_THRESHOLD:
            return self.compact()
        return None

    def standardize(self) -> None:
        """Renumber cosets breadth-first from coset 0 by generator order."""
        assert self.complete
        order: list[int] = [0]
        seen = {0}
        qi = 0
        while qi < len(order):
            alpha = order[qi]
            qi += 1
            for x in range(self.ncols):
                beta = self.table[alpha][x]
                if beta not in seen:
                    seen.add(beta)
                    order.append(beta)
        mapping = [0] * len(self.table)
        for new, old in enumerate(order):
            mapping[old] = new
        self.table = [
            [mapping[e] for e in self.table[old]] for old in order
        ]
        self.p = list(range(len(order)))

    def validate(self) -> None:
        """Check involution consistency, closed relator traces, and subgroup
        generator stabilization on a complete table."""
        live = self.live_cosets()
        for alpha in live:
            for x in range(self.ncols):
                beta = self.table[alpha][x]
                if beta is None:
                    raise AssertionError(f"incomplete entry ({alpha}, {x})")
                if self.table[self.rep(beta)][x ^ 1] != alpha:
                    raise AssertionError(f"involution broken at ({alpha}, {x})")
        for word in self.relator_cols:
            for alpha in live:
                if self._trace(alpha, word) != alpha:
                    raise AssertionError(f"relator open at coset {alpha}")
        for word in self.subgroup_cols:
            if self._trace(0, word) != 0:
                raise AssertionError("subgroup generator moves coset 0")

    def check_involution(self) -> bool:
        """Partial-table consistency: entry(c,g)=d implies entry(d,g^-1)=c,
        modulo coincidence representatives."""
        for alpha in range(len(self.table)):
            if self.p[alpha] != alpha:
                continue
            for x in range(self.ncols):
                beta = self.table[alpha][x]
                if beta is None:
                    continue
                back = self.table[self.rep(beta)][x ^ 1]
                if back is not None and self.rep(back) != alpha:
                    return False
        return True

    def _trace(self, alpha: int, word: list[int]) -> int | None:
        for x in word:
            alpha = self.table[alpha][x]
            if alpha is None:
                return None
        return alpha

    def trace_word(self, alpha: int, w: Word) -> int | None:
        return self._trace(alpha, self._word_cols(w))


# -- strategy drivers -------------------------------------------------------

def _run_hlt(ct: CosetTable, lookahead: bool) -> bool:
    """Returns True on completion, False when the limit is exceeded."""
    try:
        for word in ct.subgroup_cols:
            ct.scan_and_fill(0, word)
    except _LimitReached:
        return False
    alpha = 0
    while alpha < len(ct.table):
        if ct.p[alpha] != alpha:
            alpha += 1
            continue
        try:
            died = False
            for word in ct.relator_cols:
                ct.scan_and_fill(alpha, word)
                if ct.p[alpha] != alpha:
                    died = True
                    break
            if not died:
                for x in range(ct.ncols):
                    if ct.p[alpha] != alpha:
                        died = True
                        break
                    if ct.table[alpha][x] is None:
                        ct.define(alpha, x)
        except _LimitReached:
            if not lookahead:
                return False
            _lookahead_pass(ct)
            alpha_rep = ct.rep(alpha)
            mapping = ct.compact()
            if ct.live_count >= ct.max_cosets:
                return False
            alpha = mapping[alpha_rep]
            continue  # retry the same coset with the compacted table
        alpha_rep = ct.rep(alpha)
        mapping = ct.maybe_compact()
        if mapping is not None:
            alpha = mapping[alpha_rep]
        alpha += 1
    ct.complete = True
    return True


def _lookahead_pass(ct: CosetTable) -> None:
    for alpha in range(len(ct.table)):
        if ct.p[alpha] != alpha:
            continue
        for word in ct.relator_cols:
            ct.scan(alpha, word)
            if ct.p[alpha] != alpha:
                break


def _run_felsch(ct: CosetTable) -> bool:
    # deduction words: for every column x, all cyclic conjugates of each
    # relator or inverse relator beginning with x
    by_first: dict[int, list[list[int]]] = {x: [] for x in range(ct.ncols)}
    seen: set[tuple[int, ...]] = set()
    for word in ct.relator_cols:
        for cand in (word, [c ^ 1 for c in reversed(word)]):
            for k in range(len(cand)):
                rot = cand[k:] + cand[:k]
                key = tuple(rot)
                if key not in seen:
                    seen.add(key)
                    by_first[rot[0]].append(rot)

    try:
        for word in ct.subgroup_cols:
            ct.scan_and_fill(0, word)
    except _LimitReached:
        return False

    def find_undefined(start: int) -> tuple[int, int] | None:
        for alpha in range(start, len(ct.table)):
            if ct.p[alpha] != alpha:
                continue
            row = ct.table[alpha]
            for x in range(ct.ncols):
                if row[x] is None:
                    return (alpha, x)
        return None

    cursor = 0
    while True:
        while ct.deductions:
            alpha, x = ct.deductions.pop()
            alpha = ct.rep(alpha)
            for word in by_first[x]:
                ct.scan(alpha, word)
                if ct.p[alpha] != alpha:
                    break
            if ct.p[alpha] != alpha:
                continue
            beta = ct.table[alpha][x]
            if beta is not None:
                beta = ct.rep(beta)
                for word in by_first[x ^ 1]:
                    ct.scan(beta, word)
                    if ct.p[beta] != beta:
                        break
        if ct.maybe_compact() is not None:
            cursor = 0
        # coincidences can undefine entries behind the cursor, so fall back
        # to a full sweep before declaring the table complete
        target = find_undefined(cursor)
        if target is None:
            target = find_undefined(0)
        if target is None:
            ct.complete = True
            return True
        cursor = target[0]
        try:
            ct.define(*target)
            ct.deductions.append(target)
        except _LimitReached:
            return False


def enumerate_cosets(p: Presentation, subgroup_gens=(), strategy: str = "hlt-lookahead",
                     max_cosets: int = DEFAULT_MAX_COSETS) -> EnumerationResult:
    """Run coset enumeration; on completion the result carries the finished,
    validated, standardized table."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    start = time.monotonic()
    ct = CosetTable(p, subgroup_gens, max_cosets=max_cosets)
    if strategy == "felsch":
        ct.track_deductions = True
        ok = _run_felsch(ct)
    else:
        ok = _run_hlt(ct, lookahead=(strategy == "hlt-lookahead"))
    elapsed = (time.monotonic() - start) * 1000.0
    if not ok:
        return EnumerationResult(
            status="LimitExceeded", index=None,
            cosets_defined_total=ct.defined_total, cosets_live_max=ct.live_max,
            coincidences=ct.coincidence_count, strategy=strategy,
            elapsed_ms=elapsed, table=ct)
    ct.compact()
    ct.validate()
    ct.standardize()
    return EnumerationResult(
        status="Completed", index=ct.live_count,
        cosets_defined_total=ct.defined_total, cosets_live_max=ct.live_max,
        coincidences=ct.coincidence_count, strategy=strategy,
        elapsed_ms=elapsed, table=ct)


def verify_trivial(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS,
                   strategy: str = "hlt-lookahead") -> tuple[bool, EnumerationResult]:
    """(True, result) iff enumeration over the trivial subgroup completes
    with index 1.  False never asserts nontriviality."""
    result = enumerate_cosets(p, (), strategy=strategy, max_cosets=max_cosets)
    return (result.completed and result.index == 1), result


def permutation_action(table: CosetTable, w: Word) -> tuple[int, ...]:
    """Image of each coset under w, as a tuple (0-based); table must be
    complete."""
    if not table.complete:
        raise ValueError("permutation_action requires a completed table")
    cols = table._word_cols(w)
    return tuple(table._trace(alpha, cols) for alpha in range(table.live_count))
