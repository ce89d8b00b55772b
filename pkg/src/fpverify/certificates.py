"""Consequence certificates: machine-checkable witnesses that a word lies
in the normal closure of a presentation's relators.

A certificate is an ordered product of conjugated relators,

    target  ==  prod_i  u_i * r_{k_i}^{s_i} * u_i^-1      (freely reduced),

so verification is a single free reduction.  Search works backwards from
the target: repeatedly splice a conjugated relator into the current word so
that it shortens, until the identity is reached; the splice positions and
rotations determine the conjugators.  The search is bounded (factor count,
conjugator length, explored states) and incomplete by nature; a failed
search proves nothing.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass

from .presentation import Presentation, _cyclic_class_key
from .words import Word


@dataclass(frozen=True)
class Factor:
    conjugator: Word
    relator_index: int
    sign: int  # +1 or -1

    def to_json(self) -> dict:
        return {
            "conjugator": [[g, e] for g, e in self.conjugator],
            "relator": self.relator_index,
            "sign": self.sign,
        }


@dataclass(frozen=True)
class Certificate:
    target: Word
    factors: tuple[Factor, ...]

    def to_json(self) -> dict:
        return {
            "target": [[g, e] for g, e in self.target],
            "factors": [f.to_json() for f in self.factors],
        }

    @staticmethod
    def from_json(data: dict) -> "Certificate":
        factors = tuple(
            Factor(Word([(g, e) for g, e in f["conjugator"]]),
                   f["relator"], f["sign"])
            for f in data["factors"])
        return Certificate(Word([(g, e) for g, e in data["target"]]), factors)


class NotFound(Exception):
    """Bounded certificate search exhausted without a witness (inconclusive)."""


def certificate_product(relators: tuple[Word, ...], cert: Certificate) -> Word:
    out = Word.identity()
    for f in cert.factors:
        if not 0 <= f.relator_index < len(relators):
            raise IndexError(f"relator index {f.relator_index} out of range")
        if f.sign not in (1, -1):
            raise ValueError(f"factor sign must be +-1, got {f.sign}")
        r = relators[f.relator_index]
        if f.sign == -1:
            r = r.inverse()
        out = out * r.conjugated_by(f.conjugator)
    return out


def verify_certificate(p: Presentation, cert: Certificate) -> bool:
    """True iff the certificate's product freely reduces to its target."""
    return certificate_product(p.relators, cert) == cert.target


def conjugated_certificate(cert: Certificate, u: Word) -> Certificate:
    """Certificate for u*target*u^-1."""
    return Certificate(
        cert.target.conjugated_by(u),
        tuple(Factor(u * f.conjugator, f.relator_index, f.sign)
              for f in cert.factors))


def inverted_certificate(cert: Certificate) -> Certificate:
    """Certificate for target^-1."""
    return Certificate(
        cert.target.inverse(),
        tuple(Factor(f.conjugator, f.relator_index, -f.sign)
              for f in reversed(cert.factors)))


def inline_lemmas(cert: Certificate, n_relators: int,
                  lemmas: dict[int, Certificate]) -> Certificate:
    """Rewrite factors referencing lemma indices >= n_relators in terms of
    base relators, using each lemma's own certificate over those relators."""
    factors: list[Factor] = []
    for f in cert.factors:
        if f.relator_index < n_relators:
            factors.append(f)
            continue
        lemma = lemmas[f.relator_index]
        if f.sign == -1:
            lemma = inverted_certificate(lemma)
        factors.extend(conjugated_certificate(lemma, f.conjugator).factors)
    return Certificate(cert.target, tuple(factors))


def _splice_moves(relators: tuple[Word, ...]):
    """All rotations of each relator and its inverse, with the data needed
    to rebuild the factor: rotation rot of r^sign satisfies
    rot == z^-1 * r^sign * z for conjugator z = first k letters of r^sign."""
    moves = []
    seen: set[tuple] = set()
    for idx, r in enumerate(relators):
        for sign in (1, -1):
            base = r if sign == 1 else r.inverse()
            for k in range(len(base)):
                rot = Word(base.letters[k:] + base.letters[:k])
                key = rot.letters
                if key in seen:
                    continue
                seen.add(key)
                moves.append((rot, Word(base.letters[:k]).inverse(), idx, sign))
    return moves


def search_certificate(p: Presentation, target: Word,
                       max_factors: int = 16,
                       max_conjugator_len: int = 24,
                       max_length_slack: int = 8,
                       max_states: int = 200_000,
                       extra_relators: tuple[Word, ...] = ()) -> Certificate:
    """Bounded best-first search for a certificate expressing target as a
    consequence of p's relators (plus optional extra relators, which the
    returned certificate may reference by index past len(p.relators)).

    Splices are only tried at positions where the spliced rotation cancels
    against a neighboring letter (plus the two word ends); since every
    rotation of every relator and inverse is available, any subword
    replacement still has a representative move.

    Raises NotFound when the bounds are exhausted; that is inconclusive.
    """
    relators = p.relators + tuple(extra_relators)
    if not relators:
        if target.is_identity():
            return Certificate(target, ())
        raise NotFound(f"no relators to derive {target}")
    moves = _splice_moves(relators)
    max_len = len(target) + max_length_slack

    # best-first on (current length, factors used); parents reconstruct the
    # factor list at the end
    start = target
    best: dict[tuple, int] = {start.letters: 0}
    parents: dict[tuple, tuple] = {}
    heap: list[tuple[int, int, tuple]] = [(len(start), 0, start.letters)]
    while heap:
        length, nfac, letters = heapq.heappop(heap)
        if best.get(letters, 1 << 30) < nfac:
            continue
        if not letters:
            return _rebuild(target, parents)
        if nfac >= max_factors:
            continue
        if len(best) > max_states:
            break
        n = len(letters)
        # positions of each letter value, for cancellation-driven splicing
        occ: dict[tuple, list[int]] = {}
        for i, let in enumerate(letters):
            occ.setdefault(let, []).append(i)
        for rot, z, idx, sign in moves:
            head = rot.letters[0]
            tail = rot.letters[-1]
            positions = {0, n}
            # rotation head cancels the letter just before the splice
            for i in occ.get((head[0], -head[1]), ()):
                positions.add(i + 1)
            # rotation tail cancels the letter just after the splice
            for i in occ.get((tail[0], -tail[1]), ()):
                positions.add(i)
            for pos in positions:
                new = Word(letters[:pos] + rot.letters + letters[pos:])
                if len(new) > max_len:
                    continue
                conj = Word(letters[:pos]) * z
                if len(conj) > max_conjugator_len:
                    continue
                key = new.letters
                if best.get(key, 1 << 30) <= nfac + 1:
                    continue
                best[key] = nfac + 1
                parents[key] = (letters, conj, idx, sign)
                heapq.heappush(heap, (len(new), nfac + 1, key))
    raise NotFound(f"no certificate for {target} within bounds")


def _rebuild(target: Word, parents: dict) -> Certificate:
    # walk from identity back to target; each step recorded w' = C * w with
    # C = conj * r^sign * conj^-1, so target = C_1^-1 C_2^-1 ... C_n^-1
    chain = []
    cur: tuple = ()
    while cur != target.letters:
        prev, conj, idx, sign = parents[cur]
        chain.append(Factor(conj, idx, -sign))
        cur = prev
    # steps were recorded identity-outward; the product wants them
    # target-outward
    return Certificate(target, tuple(reversed(chain)))


# -- certificate extraction from coset enumeration ---------------------------
#
# Splice search cannot reach consequences whose shortest derivation is long
# (e.g. relators that only follow from the collapse of a trivial group).  For
# those we re-run a coset enumeration that logs a proof with every table
# entry: entry (alpha, letter) = beta carries a flat certificate whose
# product freely reduces to W(alpha) * letter * W(beta)^-1, where W(c) is the
# definition word of coset c.  Definitions carry the empty certificate,
# deductions compose the certificates along the relator scan plus one
# conjugated-relator factor, and coincidences carry bridge certificates
# through a union-find.  When the enumeration collapses to a single coset,
# tracing any word through the table concatenates entry certificates into a
# certificate for that word.


# Proofs are kept as single freely reduced words over an extended alphabet:
# the presentation's generators plus one reserved symbol "@k" per relator
# (standing for relator k inserted at that point).  Free reduction over the
# extended alphabet is sound (cancelling "@k" against its inverse deletes a
# relator-times-inverse pair) and it is what keeps proofs small: conjugator
# segments of adjacent factors cancel against each other, which a list of
# opaque (conjugator, relator, sign) factors can never do.  Deleting the
# "@" symbols from any proof built here leaves a word that freely reduces
# to the identity, so the factor form extracted at the end multiplies out
# to exactly the word the proof claims.


def _rel_symbol(k: int) -> str:
    return f"@{k}"


def _proof_to_factors(proof: Word) -> tuple[Factor, ...]:
    """Convert a proof word to certificate factors: each "@k" at prefix u
    becomes the factor u * relator_k^sign * u^-1."""
    factors = []
    prefix: list = []
    for name, sign in proof.letters:
        if name.startswith("@"):
            factors.append(Factor(Word(prefix), int(name[1:]), sign))
        else:
            prefix.append((name, sign))
    return tuple(factors)


class _NewTrivialWord(Exception):
    """A coincidence produced a trivial word outside the known relator set."""

    def __init__(self, word: Word, proof: Word):
        self.word = word
        self.proof = proof


class _ProvingTable:
    def __init__(self, p: Presentation, max_cosets: int,
                 novelty_keys: set | None = None):
        self.relators = [r.letters for r in p.relators]
        self.letters = [(g, 1) for g in p.generators] \
            + [(g, -1) for g in p.generators]
        self.novelty_keys = novelty_keys
        self.max_cosets = max_cosets
        self.words: list[Word] = [Word.identity()]  # definition word per coset
        self.merged: dict[int, tuple[int, Word]] = {}  # dead -> (parent, proof)
        self.tab: dict[tuple, tuple[int, Word]] = {}  # (coset, letter) -> ...
        self.live = 1
        self.closed: set[tuple] = set()  # (coset, relator) scans already closed
        self.pending: list[int] = []  # cosets whose scans may now progress
        self.queued: set[int] = set()
        # a proof attached to a table entry (alpha, letter) = beta is a word
        # over generators and "@k" symbols whose relator expansion freely
        # reduces to W(alpha) * letter * W(beta)^-1

    def enqueue(self, a: int) -> None:
        if a not in self.queued:
            self.queued.add(a)
            self.pending.append(a)

    def find(self, a: int) -> tuple[int, Word]:
        """Live representative of a, with proof of W(a)*W(rep)^-1."""
        chain = []
        while a in self.merged:
            chain.append(a)
            a = self.merged[a][0]
        proof = Word.identity()
        for c in reversed(chain):  # path-compress, root-most first
            proof = self.merged[c][1] * proof
            self.merged[c] = (a, proof)
        return a, (self.merged[chain[0]][1] if chain else Word.identity())

    def get(self, a: int, letter) -> tuple[int, Word] | None:
        entry = self.tab.get((a, letter))
        if entry is None:
            return None
        b, proof = entry
        if b in self.merged:
            b, bridge = self.find(b)
            proof = proof * bridge
            self.tab[(a, letter)] = (b, proof)
        return b, proof

    def define(self, a: int, letter) -> int:
        if self.live >= self.max_cosets:
            raise NotFound(f"coset limit {self.max_cosets} exceeded")
        b = len(self.words)
        self.words.append(self.words[a] * Word([letter]))
        self.tab[(a, letter)] = (b, Word.identity())
        self.tab[(b, (letter[0], -letter[1]))] = (a, Word.identity())
        self.live += 1
        self.enqueue(a)
        self.enqueue(b)
        return b

    def merge(self, a: int, b: int, proof: Word) -> None:
        """Record that cosets a, b coincide; proof shows W(a)*W(b)^-1."""
        queue = [(a, b, proof)]
        while queue:
            a, b, proof = queue.pop()
            ra, ca = self.find(a)
            rb, cb = self.find(b)
            if ra == rb:
                continue
            bridge = ca.inverse() * proof * cb  # proves W(ra)*W(rb)^-1
            if self.novelty_keys is not None:
                # surface the trivial word behind this coincidence if it is
                # not already a relator (used for collapse-ladder mining;
                # also keeps the terminal coincidence cascade, whose proofs
                # grow quadratically, from ever running)
                t = self.words[ra] * self.words[rb].inverse()
                core, conj = t.cyclic_reduce()
                if _cyclic_class_key(core) not in self.novelty_keys:
                    raise _NewTrivialWord(core, conj.inverse() * bridge * conj)
            if rb < ra:
                ra, rb = rb, ra
                bridge = bridge.inverse()
            self.merged[rb] = (ra, bridge.inverse())
            self.live -= 1
            self.enqueue(ra)
            for letter in self.letters:
                entry = self.tab.pop((rb, letter), None)
                if entry is None:
                    continue
                d, c = entry
                moved = bridge * c  # proves W(ra)*letter*W(d)^-1
                existing = self.tab.get((ra, letter))
                if existing is None:
                    self.tab[(ra, letter)] = (d, moved)
                else:
                    d2, c2 = existing
                    queue.append((d, d2, moved.inverse() * c2))

    def scan(self, start: int, ridx: int) -> None:
        """Scan one relator at one coset, recording a deduction or
        coincidence when the gap closes to one or zero; never defines."""
        # once a scan closes cleanly it stays closed in every later quotient
        if (start, ridx) in self.closed:
            return
        r = self.relators[ridx]
        n = len(r)
        g = start
        forward = Word.identity()
        i = 0
        while i < n:
            entry = self.get(g, r[i])
            if entry is None:
                break
            g, c = entry
            forward = forward * c
            i += 1
        w = self.words[start]
        rel_factor = Word(w.letters + ((_rel_symbol(ridx), 1),)) * w.inverse()
        if i == n:
            # closed all the way round; g must coincide with start
            if g != start:
                self.merge(g, start, forward.inverse() * rel_factor)
            else:
                self.closed.add((start, ridx))
            return
        b = start
        backward = Word.identity()
        j = n
        while j > i:
            letter = r[j - 1]
            entry = self.get(b, (letter[0], -letter[1]))
            if entry is None:
                break
            b, c = entry
            backward = backward * c
            j -= 1
        if j == i:
            # both ends met with no gap: forward end g and backward end b
            # name the same coset
            if g != b:
                self.merge(g, b, forward.inverse() * rel_factor * backward)
            return
        if j == i + 1:
            proof = forward.inverse() * rel_factor * backward
            self.tab[(g, r[i])] = (b, proof)
            self.tab[(b, (r[i][0], -r[i][1]))] = (g, proof.inverse())
            self.enqueue(g)
            self.enqueue(b)

    def drain(self) -> None:
        while self.pending:
            a = self.pending.pop()
            self.queued.discard(a)
            if a in self.merged:
                continue
            for ridx in range(len(self.relators)):
                if a in self.merged:
                    break
                self.scan(a, ridx)

    def run(self) -> None:
        """Deduction-driven enumeration: propagate all scans, then define
        the first undefined table entry, and repeat until complete."""
        self.enqueue(0)
        cursor = 0
        n_letters = len(self.letters)
        while True:
            self.drain()
            while cursor < len(self.words) * n_letters:
                a, k = divmod(cursor, n_letters)
                if a not in self.merged and (a, self.letters[k]) not in self.tab:
                    break
                cursor += 1
            a, k = divmod(cursor, n_letters)
            if a >= len(self.words):
                # cursor exhausted; sweep once in case anything was missed
                gap = next(((b, letter) for b in range(len(self.words))
                            if b not in self.merged for letter in self.letters
                            if (b, letter) not in self.tab), None)
                if gap is None:
                    return
                self.define(*gap)
            else:
                self.define(a, self.letters[k])

    def trace(self, w: Word) -> Word:
        """Proof word whose expansion is w, valid once only coset 0 is live."""
        a = 0
        proof = Word.identity()
        for letter in w.letters:
            entry = self.get(a, letter)
            if entry is None:  # cannot happen on a complete table
                raise NotFound(f"incomplete table at {letter}")
            a, c = entry
            proof = proof * c
        if a != 0:
            raise NotFound(f"{w} does not return to the base coset")
        return proof


@dataclass(frozen=True)
class Derivation:
    """A chain of certificates deriving target from a presentation's
    relators.  Step k is certified over the base relators plus the targets
    of steps 0..k-1 (referenced by relator indices past the base count);
    the last step's target is the derived word.

    Chains exist because some consequences (everything that hinges on the
    collapse of a trivial group) have no short single certificate: inlining
    the steps multiplies out to astronomically many factors, while the
    chain stays small and every link re-verifies by one free reduction.
    """

    target: Word
    steps: tuple[Certificate, ...]

    def to_json(self) -> dict:
        return {
            "target": [[g, e] for g, e in self.target],
            "steps": [s.to_json() for s in self.steps],
        }

    @staticmethod
    def from_json(data: dict) -> "Derivation":
        return Derivation(
            Word([(g, e) for g, e in data["target"]]),
            tuple(Certificate.from_json(s) for s in data["steps"]))


def verify_derivation(p: Presentation, d: Derivation) -> bool:
    """True iff every step's certificate verifies over the base relators
    plus the targets of the earlier steps, and the last step derives
    d.target."""
    if not d.steps:
        return d.target.is_identity()
    relators = list(p.relators)
    for step in d.steps:
        if certificate_product(tuple(relators), step) != step.target:
            return False
        relators.append(step.target)
    return d.steps[-1].target == d.target


def derive_by_collapse(p: Presentation, target: Word,
                       max_cosets: int = 100_000,
                       max_steps: int = 500,
                       search_states: int = 5_000) -> Derivation:
    """Derivation of target through the collapse of a trivial group.

    Runs proof-logging coset enumerations over the relators plus the lemmas
    found so far; each enumeration either completes (the group is certified
    trivial and target is traced through the table) or surfaces one new
    short trivial word, which joins the lemma list with its extracted
    certificate, and the enumeration restarts.  Each lemma certificate is
    re-searched with the splice search for compactness before being kept.
    Only applicable when the presented group is trivial; raises NotFound
    otherwise or when the bounds are exhausted.
    """
    rels = list(p.relators)
    nbase = len(rels)
    steps: list[Certificate] = []
    while True:
        table = _ProvingTable(Presentation(p.generators, rels), max_cosets,
                              novelty_keys={_cyclic_class_key(r) for r in rels})
        try:
            table.run()
        except _NewTrivialWord as lemma:
            if len(steps) >= max_steps:
                raise NotFound(f"no derivation within {max_steps} lemmas")
            current = Presentation(p.generators, rels)
            try:
                cert = search_certificate(
                    current, lemma.word, max_factors=8, max_conjugator_len=16,
                    max_length_slack=10, max_states=search_states)
            except NotFound:
                cert = Certificate(lemma.word, _proof_to_factors(lemma.proof))
            steps.append(cert)
            rels.append(lemma.word)
            continue
        if table.live != 1:
            raise NotFound(f"group not certified trivial ({table.live} cosets)")
        steps.append(Certificate(target, _proof_to_factors(table.trace(target))))
        break
    d = Derivation(target, _prune_derivation(nbase, steps))
    if not verify_derivation(p, d):
        raise AssertionError(f"extracted derivation failed for {target}")
    return d


def _prune_derivation(nbase: int, steps: list[Certificate]) -> tuple[Certificate, ...]:
    """Drop lemma steps the final step never (transitively) references and
    renumber the survivors."""
    needed = {len(steps) - 1}
    for k in range(len(steps) - 1, -1, -1):
        if k not in needed:
            continue
        for f in steps[k].factors:
            if f.relator_index >= nbase:
                needed.add(f.relator_index - nbase)
    order = sorted(needed)
    renumber = {nbase + old: nbase + new for new, old in enumerate(order)}
    kept = []
    for k in order:
        kept.append(Certificate(steps[k].target, tuple(
            Factor(f.conjugator, renumber.get(f.relator_index, f.relator_index),
                   f.sign)
            for f in steps[k].factors)))
    return tuple(kept)


def derivation_to_certificate(p: Presentation, d: Derivation,
                              max_factors: int = 100_000) -> Certificate:
    """Inline a derivation chain into one certificate over p's relators.

    The expanded factor count is computed up front; chains whose expansion
    exceeds max_factors raise NotFound rather than materializing.
    """
    nbase = len(p.relators)
    weight = [0] * len(d.steps)
    for k, step in enumerate(d.steps):
        weight[k] = sum(1 if f.relator_index < nbase
                        else weight[f.relator_index - nbase]
                        for f in step.factors)
    if not d.steps:
        return Certificate(d.target, ())
    if weight[-1] > max_factors or sum(weight) > 4 * max_factors:
        raise NotFound(
            f"inlined derivation needs {weight[-1]} factors (> {max_factors})")
    flat: list[tuple[Factor, ...]] = []
    for step in d.steps:
        lemmas = {nbase + j: Certificate(d.steps[j].target, flat[j])
                  for j in range(len(flat))}
        flat.append(inline_lemmas(step, nbase, lemmas).factors)
    cert = Certificate(d.target, flat[-1])
    if not verify_certificate(p, cert):
        raise AssertionError(f"inlined derivation failed for {d.target}")
    return cert


def derive_all(p: Presentation, targets: list[Word],
               passes: int = 3,
               state_budgets: tuple[int, ...] = (20_000, 100_000, 400_000),
               **search_bounds) -> dict[int, Certificate]:
    """Search certificates for several targets with lemma layering: each
    pass retries unproven targets with all already-proven targets available
    as derived relators, escalating the state budget per pass.  Returned
    certificates are inlined down to p's own relators and all verify.
    Targets not derived within the bounds are absent from the result."""
    n = len(p.relators)
    proven: dict[int, Certificate] = {}
    lemma_order: list[int] = []  # target indices, in the order they were proven
    for attempt in range(passes):
        budget = state_budgets[min(attempt, len(state_budgets) - 1)]
        progress = False
        for i, t in enumerate(targets):
            if i in proven:
                continue
            extra = tuple(targets[j] for j in lemma_order)
            try:
                cert = search_certificate(p, t, max_states=budget,
                                          extra_relators=extra, **search_bounds)
            except NotFound:
                continue
            lemmas = {n + k: proven[j] for k, j in enumerate(lemma_order)}
            cert = inline_lemmas(cert, n, lemmas)
            if not verify_certificate(p, cert):
                raise AssertionError(f"inlined certificate failed for {t}")
            proven[i] = cert
            lemma_order.append(i)
            progress = True
        if len(proven) == len(targets):
            break
        if not progress and attempt >= len(state_budgets) - 1:
            break
    return proven


def check_equivalence(p1: Presentation, p2: Presentation,
                      dictionary: dict[str, Word],
                      certs: dict[int, Certificate] | None = None,
                      **search_bounds) -> bool:
    """One-directional consequence check: every relator of p2, translated
    into p1's generators via dictionary, must carry a verified certificate
    over p1's relators.  Supplied certs (keyed by p2 relator index) are
    verified; missing ones are searched for."""
    for g in {g for r in p2.relators for g in r.generators()}:
        if g not in dictionary:
            raise KeyError(f"dictionary missing entry for generator {g!r}")
    certs = certs or {}
    missing: list[int] = []
    translations: dict[int, Word] = {}
    for i, r in enumerate(p2.relators):
        translated = r
        for g in sorted(r.generators()):
            translated = translated.substitute(g, dictionary[g])
        if translated.is_identity():
            continue
        translations[i] = translated
        cert = certs.get(i)
        if cert is not None:
            if cert.target != translated or not verify_certificate(p1, cert):
                return False
        else:
            missing.append(i)
    if missing:
        targets = [translations[i] for i in missing]
        found = derive_all(p1, targets, **search_bounds)
        if len(found) != len(targets):
            return False
    return True


def save_certificates(path, certs: dict) -> None:
    data = {str(k): c.to_json() for k, c in certs.items()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


def load_certificates(path) -> dict[int, Certificate]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return {int(k): Certificate.from_json(v) for k, v in data.items()}
