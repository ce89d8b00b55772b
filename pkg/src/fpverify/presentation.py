"""Finitely presented groups: presentation text format, parser/printer,
and Tietze transformations (generator elimination, relator simplification).

Grammar (whitespace-insensitive, ``#`` line comments, optional ``name:``
header line in files)::

    presentation := "<" genlist "|" rellist ">"
    genlist      := ident ("," ident)*
    rellist      := [ relation ("," relation)* ]
    relation     := word "=" word | word        (bare word means word = 1)
    word         := "1" | term+
    term         := atom [ "^" signed-int ]
    atom         := ident | "[" word "," word "]" | "(" word ")"

Relations ``w = v`` are normalized to the relator ``w v^-1``; commutators
are expanded according to the active convention; relators are stored
cyclically reduced, with trivial ones dropped.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .words import (
    CONVENTION_DEFAULT,
    GEN_NAME_RE,
    Word,
    check_generator_name,
    commutator,
)


class ParseError(ValueError):
    """Syntax or semantic error in presentation text, with location."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class NoDefiningRelator(ValueError):
    """No relator isolates the generator requested for elimination."""

    def __init__(self, gen: str, candidates: Sequence[Word]):
        self.gen = gen
        self.candidates = list(candidates)
        shown = ", ".join(str(w) for w in self.candidates) or "none"
        super().__init__(
            f"no relator isolates generator {gen!r}; relators containing it: {shown}"
        )


class Presentation:
    """Immutable: generator name list plus cyclically reduced relators."""

    __slots__ = ("name", "generators", "relators")

    def __init__(self, generators: Iterable[str], relators: Iterable[Word] = (),
                 name: str = ""):
        gens = tuple(check_generator_name(g) for g in generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generator names in {gens}")
        kept = []
        for r in relators:
            core, _ = r.cyclic_reduce()
            if core.is_identity():
                if not r.is_identity():
                    warnings.warn(f"dropping trivial relator {r}")
                continue
            missing = core.generators() - set(gens)
            if missing:
                raise ValueError(f"relator {core} uses unknown generators {missing}")
            kept.append(core)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(kept))

    def __setattr__(self, name, value):
        raise AttributeError("Presentation is immutable")

    def __eq__(self, other) -> bool:
        return (isinstance(other, Presentation)
                and self.generators == other.generators
                and self.relators == other.relators)

    def __hash__(self) -> int:
        return hash((self.generators, self.relators))

    def __repr__(self) -> str:
        return f"Presentation(< {', '.join(self.generators)} | {len(self.relators)} relators >)"

    def with_relators(self, relators: Iterable[Word]) -> "Presentation":
        return Presentation(self.generators, relators, name=self.name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.generators),
            "relators": [[[g, e] for g, e in r] for r in self.relators],
        }

    @staticmethod
    def from_json(data: dict) -> "Presentation":
        rels = [Word([(g, e) for g, e in r]) for r in data["relators"]]
        return Presentation(data["generators"], rels, name=data.get("name", ""))


# -- parsing ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<comment>#[^\n]*)"
    r"|(?P<int>-?\d+)"
    r"|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<punct>[<>|,=^\[\]()])"
)


class _Tokenizer:
    def __init__(self, text: str):
        self.tokens: list[tuple[str, str, int, int]] = []
        line, col = 1, 1
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", line, col)
            kind = m.lastgroup
            value = m.group()
            if kind not in ("ws", "comment"):
                self.tokens.append((kind, value, line, col))
            newlines = value.count("\n")
            if newlines:
                line += newlines
                col = len(value) - value.rfind("\n")
            else:
                col += len(value)
            pos = m.end()
        self.tokens.append(("eof", "", line, col))
        self.i = 0

    def peek(self) -> tuple[str, str, int, int]:
        return self.tokens[self.i]

    def next(self) -> tuple[str, str, int, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val, line, col = self.next()
        if val != value:
            raise ParseError(f"expected {value!r}, got {val or 'end of input'!r}", line, col)

    def error(self, message: str) -> ParseError:
        _, _, line, col = self.peek()
        return ParseError(message, line, col)


class _Parser:
    def __init__(self, text: str, convention: str):
        self.toks = _Tokenizer(text)
        self.convention = convention

    def parse_presentation(self, name: str = "") -> Presentation:
        self.toks.expect("<")
        gens = [self._ident()]
        while self.toks.peek()[1] == ",":
            self.toks.next()
            gens.append(self._ident())
        if len(set(gens)) != len(gens):
            raise self.toks.error("duplicate generator name")
        self.toks.expect("|")
        relators: list[Word] = []
        if self.toks.peek()[1] != ">":
            relators.append(self._relation())
            while self.toks.peek()[1] == ",":
                self.toks.next()
                relators.append(self._relation())
        self.toks.expect(">")
        if self.toks.peek()[0] != "eof":
            raise self.toks.error("trailing input after presentation")
        gen_set = set(gens)
        for r in relators:
            unknown = r.generators() - gen_set
            if unknown:
                raise self.toks.error(
                    f"relator {r} uses unknown generator(s) {sorted(unknown)}")
        return Presentation(gens, relators, name=name)

    def parse_word(self) -> Word:
        w = self._word()
        if self.toks.peek()[0] != "eof":
            raise self.toks.error("trailing input after word")
        return w

    def _ident(self) -> str:
        kind, val, line, col = self.toks.next()
        if kind != "ident":
            raise ParseError(f"expected identifier, got {val or 'end of input'!r}", line, col)
        return val

    def _relation(self) -> Word:
        left = self._word()
        if self.toks.peek()[1] == "=":
            self.toks.next()
            right = self._word()
            return left * right.inverse()
        return left

    def _word(self) -> Word:
        if self.toks.peek()[1] == "1":
            self.toks.next()
            return Word.identity()
        w = self._term()
        while self.toks.peek()[0] in ("ident",) or self.toks.peek()[1] in ("[", "("):
            w = w * self._term()
        return w

    def _term(self) -> Word:
        atom = self._atom()
        if self.toks.peek()[1] == "^":
            self.toks.next()
            kind, val, line, col = self.toks.next()
            if kind != "int":
                raise ParseError(f"expected integer exponent, got {val!r}", line, col)
            return atom ** int(val)
        return atom

    def _atom(self) -> Word:
        kind, val, line, col = self.toks.peek()
        if kind == "ident":
            self.toks.next()
            return Word.gen(val)
        if val == "[":
            self.toks.next()
            u = self._word()
            self.toks.expect(",")
            v = self._word()
            self.toks.expect("]")
            return commutator(u, v, self.convention)
        if val == "(":
            self.toks.next()
            w = self._word()
            self.toks.expect(")")
            return w
        raise ParseError(f"expected word atom, got {val or 'end of input'!r}", line, col)


def parse_word(text: str, convention: str = CONVENTION_DEFAULT) -> Word:
    """Parse a single word in the presentation grammar."""
    return _Parser(text, convention).parse_word()


def parse_presentation(text: str, convention: str = CONVENTION_DEFAULT,
                       name: str = "") -> Presentation:
    """Parse presentation text, honoring an optional ``name:`` header line."""
    lines = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if stripped.startswith("name:"):
            name = stripped[len("name:"):].strip()
            lines.append("")
        else:
            lines.append(raw)
    return _Parser("\n".join(lines) if lines else text, convention).parse_presentation(name)


def print_presentation(p: Presentation) -> str:
    """Canonical one-line form; re-parses to a structurally equal presentation."""
    gens = ", ".join(p.generators)
    rels = ", ".join(str(r) for r in p.relators)
    return f"< {gens} | {rels} >" if p.relators else f"< {gens} | >"


def load_presentation_file(path, convention: str = CONVENTION_DEFAULT) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read(), convention=convention)


# -- Tietze moves -----------------------------------------------------------

@dataclass(frozen=True)
class EliminateGenerator:
    gen: str
    definition: Word
    defining_relator_index: int


@dataclass(frozen=True)
class SubstituteInRelators:
    gen: str
    replacement: Word


@dataclass(frozen=True)
class AddRedundantRelator:
    relator: Word
    certificate: object = None


@dataclass(frozen=True)
class RemoveRedundantRelator:
    index: int
    certificate: object = None


@dataclass(frozen=True)
class DropDuplicateRelator:
    index: int


TietzeMove = (EliminateGenerator | SubstituteInRelators | AddRedundantRelator
              | RemoveRedundantRelator | DropDuplicateRelator)


def _defining_forms(relator: Word, gen: str) -> Word | None:
    """If relator is gen*w^-1 up to cyclic permutation and inversion, with w
    free of gen, return the definition w."""
    if relator.count(gen) != 1:
        return None
    for cand in (relator, relator.inverse()):
        for rot in cand.cyclic_permutations():
            first = rot.letters[0]
            if first == (gen, 1):
                return Word(rot.letters[1:]).inverse()
    return None


def find_defining_relator(p: Presentation, gen: str) -> tuple[int, Word] | None:
    """First relator (by index) defining gen, and the definition word."""
    for i, r in enumerate(p.relators):
        definition = _defining_forms(r, gen)
        if definition is not None:
            return i, definition
    return None


def eliminate_generator(p: Presentation, gen: str,
                        using: int | None = None) -> tuple[Presentation, EliminateGenerator]:
    """Remove gen using a defining relator gen*w^-1; substitute w elsewhere.

    With ``using``, that relator index must define gen and is the one
    consumed; otherwise the first defining relator is used.
    """
    if gen not in p.generators:
        raise ValueError(f"{gen!r} is not a generator of {p!r}")
    if using is not None:
        definition = _defining_forms(p.relators[using], gen)
        if definition is None:
            raise NoDefiningRelator(gen, [p.relators[using]])
        found = (using, definition)
    else:
        found = find_defining_relator(p, gen)
    if found is None:
        raise NoDefiningRelator(gen, [r for r in p.relators if gen in r.generators()])
    idx, definition = found
    new_rels = [r.substitute(gen, definition)
                for i, r in enumerate(p.relators) if i != idx]
    move = EliminateGenerator(gen, definition, idx)
    out = Presentation([g for g in p.generators if g != gen], new_rels, name=p.name)
    return out, move


def _cyclic_class_key(w: Word) -> tuple:
    """Canonical key identifying w up to cyclic permutation and inversion."""
    variants = []
    for cand in (w, w.inverse()):
        variants.extend(v.letters for v in cand.cyclic_permutations())
    return min(variants)


def dedupe_relators(p: Presentation) -> tuple[Presentation, list[TietzeMove]]:
    """Drop relators equal to an earlier one up to cyclic permutation/inversion."""
    seen: set[tuple] = set()
    kept: list[Word] = []
    moves: list[TietzeMove] = []
    for i, r in enumerate(p.relators):
        key = _cyclic_class_key(r)
        if key in seen:
            moves.append(DropDuplicateRelator(i))
        else:
            seen.add(key)
            kept.append(r)
    return p.with_relators(kept), moves


def simplify(p: Presentation, budget: int = 1000) -> tuple[Presentation, list[TietzeMove]]:
    """Greedy simplification: repeatedly eliminate the generator with the
    shortest defining relator, deduplicating as we go.  When one relator
    defines two generators (like w*g^-1), the generator later in the
    generator list is the one eliminated: generators are listed in the
    order they were introduced, so auxiliary ones go first.

    The returned move list replays exactly via replay_moves.
    """
    if budget < 0:
        raise ValueError("budget must be >= 0")
    moves: list[TietzeMove] = []
    current = p
    while budget > 0:
        current, dropped = dedupe_relators(current)
        if dropped:
            moves.extend(dropped)
        best: tuple[int, int, str, int] | None = None
        for pos, gen in enumerate(current.generators):
            shortest: tuple[int, int] | None = None  # (len, relator index)
            for i, r in enumerate(current.relators):
                if _defining_forms(r, gen) is not None:
                    if shortest is None or len(r) < shortest[0]:
                        shortest = (len(r), i)
            if shortest is not None:
                key = (shortest[0], -pos, gen, shortest[1])
                if best is None or key < best:
                    best = key
        if best is None:
            break
        current, move = eliminate_generator(current, best[2], using=best[3])
        moves.append(move)
        budget -= 1
    current, dropped = dedupe_relators(current)
    moves.extend(dropped)
    return current, moves


def replay_moves(p: Presentation, moves: Sequence[TietzeMove]) -> Presentation:
    """Re-apply a recorded move list to reproduce a simplification's output."""
    current = p
    for move in moves:
        if isinstance(move, EliminateGenerator):
            current, got = eliminate_generator(current, move.gen,
                                               using=move.defining_relator_index)
            if got.definition != move.definition:
                raise ValueError(f"replay mismatch eliminating {move.gen}")
        elif isinstance(move, SubstituteInRelators):
            current = current.with_relators(
                [r.substitute(move.gen, move.replacement) for r in current.relators])
        elif isinstance(move, AddRedundantRelator):
            current = current.with_relators(list(current.relators) + [move.relator])
        elif isinstance(move, RemoveRedundantRelator):
            rels = list(current.relators)
            del rels[move.index]
            current = current.with_relators(rels)
        elif isinstance(move, DropDuplicateRelator):
            current, _ = dedupe_relators(current)
        else:
            raise TypeError(f"unknown move {move!r}")
    return current


def abelianized_relation_matrix(p: Presentation) -> list[list[int]]:
    """One row per relator, one column per generator: exponent sums."""
    return [[r.exponent_sum(g) for g in p.generators] for r in p.relators]
