"""
Canonical text format (dfk-format v1) for posets, frames, CF-spaces, mappings and CF-relations.

A file is the header line ``# dfk-format v1`` followed by named blocks, each
closed by ``end``. ``#`` starts a comment. Sets are written ``{ a b }`` with the
empty set as ``{ }``. Serialization is canonical: blocks are grouped by kind and
sorted by name, and set elements follow declaration order.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np

from .errors import DFKError, DuplicateSectionError, ParseError, UnknownTokenError
from .frames import InformationFrame
from .morphisms.mappings import ApproximableMapping
from .morphisms.relations import CFRelation
from .order import FinitePoset, validate_poset
from .rough import CFSpace
from .utils.bitsets import bit, members

logger = logging.getLogger(__name__)

HEADER = "# dfk-format v1"

Structure = Union[FinitePoset, InformationFrame, CFSpace, ApproximableMapping, CFRelation]

KINDS = ("poset", "frame", "cfspace", "mapping", "cfrelation")

_RESERVED = {"{", "}", ";", ":", "|-", "=>", "->", "<="}


def kind_of(structure: Structure) -> str:
    if isinstance(structure, FinitePoset):
        return "poset"
    if isinstance(structure, InformationFrame):
        return "frame"
    if isinstance(structure, CFSpace):
        return "cfspace"
    if isinstance(structure, ApproximableMapping):
        return "mapping"
    if isinstance(structure, CFRelation):
        return "cfrelation"
    raise DFKError(f"no text format for {type(structure).__name__}")


@dataclass
class Document:
    """Named structures of one file; morphisms refer to their endpoints by name."""

    structures: Dict[str, Structure] = field(default_factory=dict)
    links: Dict[str, Tuple[str, str]] = field(default_factory=dict)

    def add(self, name: str, structure: Structure, source: Optional[str] = None,
            target: Optional[str] = None) -> str:
        """
        Add a structure under name. Morphism endpoints are looked up by equality
        among the objects already present and added as ``<name>_source`` and
        ``<name>_target`` when missing.

        Raises:
            DuplicateSectionError: when the name is taken
        """
        if name in self.structures:
            raise DuplicateSectionError(name)
        kind = kind_of(structure)
        if kind in ("mapping", "cfrelation"):
            source = source or self._endpoint(f"{name}_source", structure.source)
            target = target or self._endpoint(f"{name}_target", structure.target)
            self.links[name] = (source, target)
        self.structures[name] = structure
        return name

    def _endpoint(self, fallback: str, obj: Structure) -> str:
        for name, existing in self.structures.items():
            if type(existing) is type(obj) and existing == obj:
                return name
        return self.add(fallback, obj)

    def get(self, name: str) -> Structure:
        try:
            return self.structures[name]
        except KeyError:
            raise UnknownTokenError(name) from None

    def of_kind(self, kind: str) -> List[Tuple[str, Structure]]:
        return [(name, s) for name, s in self.structures.items() if kind_of(s) == kind]

    def first(self, *kinds: str) -> Tuple[str, Structure]:
        """The first structure of the given kinds (any kind when none are given)."""
        for name, structure in self.structures.items():
            if not kinds or kind_of(structure) in kinds:
                return name, structure
        raise DFKError(f"the document holds no {' or '.join(kinds) or 'structure'}")

    def __iter__(self) -> Iterator[Tuple[str, Structure]]:
        return iter(self.structures.items())

    def __len__(self) -> int:
        return len(self.structures)


# Parsing

class _Line:
    """The words of one source line with their 1-based columns."""

    def __init__(self, number: int, text: str):
        self.number = number
        self.words = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", text)]
        self.pos = 0
        self.end_column = len(text) + 1

    def at_end(self) -> bool:
        return self.pos >= len(self.words)

    def peek(self) -> Optional[str]:
        return None if self.at_end() else self.words[self.pos][1]

    def column(self) -> int:
        return self.end_column if self.at_end() else self.words[self.pos][0]

    def take(self, expected: str) -> str:
        """Next word, which must not be punctuation."""
        if self.at_end():
            raise ParseError(self.number, self.column(), expected, "end of line")
        word = self.peek()
        if word in _RESERVED:
            raise ParseError(self.number, self.column(), expected, word)
        self.pos += 1
        return word

    def expect(self, literal: str):
        if self.peek() != literal:
            found = "end of line" if self.at_end() else self.peek()
            raise ParseError(self.number, self.column(), repr(literal), found)
        self.pos += 1

    def finish(self):
        if not self.at_end():
            raise ParseError(self.number, self.column(), "end of line", self.peek())

    def ident(self, index: Dict[str, int], expected: str) -> int:
        column = self.column()
        word = self.take(expected)
        if word not in index:
            raise UnknownTokenError(word, self.number, column)
        return index[word]

    def read_set(self, index: Dict[str, int]) -> int:
        self.expect("{")
        mask = 0
        while self.peek() != "}":
            if self.at_end():
                raise ParseError(self.number, self.column(), "'}'", "end of line")
            mask |= bit(self.ident(index, "element id or '}'"))
        self.pos += 1
        return mask

    def read_sets(self, index: Dict[str, int]) -> List[int]:
        sets = []
        while not self.at_end():
            sets.append(self.read_set(index))
        return sets

    def rest(self, expected: str) -> List[str]:
        words = []
        while not self.at_end():
            words.append(self.take(expected))
        return words


class _Block:
    """Tracks once-only sections of a block."""

    def __init__(self):
        self.seen: Dict[str, int] = {}

    def once(self, section: str, line: _Line, column: int):
        if section in self.seen:
            raise DuplicateSectionError(section, line.number, column)
        self.seen[section] = line.number

    def need(self, section: str, line: _Line, column: int):
        if section not in self.seen:
            raise ParseError(line.number, column, f"'{section}' before this line")


def _declared(words: List[str], line: _Line, column: int) -> Dict[str, int]:
    index: Dict[str, int] = {}
    for word in words:
        if word in index:
            raise DuplicateSectionError(word, line.number, column)
        index[word] = len(index)
    return index


def _parse_frame(lines: Iterator[_Line], head: _Line) -> InformationFrame:
    block = _Block()
    tokens: List[str] = []
    index: Dict[str, int] = {}
    cons: Dict[int, List[int]] = {}
    tables: Dict[int, Dict[int, int]] = {}
    truth = None
    for line in lines:
        column = line.column()
        keyword = line.take("frame section")
        if keyword == "end":
            line.finish()
            break
        if keyword == "tokens":
            block.once("tokens", line, column)
            tokens = line.rest("token id")
            index = _declared(tokens, line, column)
        elif keyword in ("con", "ent"):
            block.need("tokens", line, column)
            token_column = line.column()
            i = line.ident(index, "token id")
            block.once(f"{keyword} {tokens[i]}", line, token_column)
            line.expect(":")
            if keyword == "con":
                cons[i] = line.read_sets(index)
            else:
                table: Dict[int, int] = {}
                while not line.at_end():
                    X = line.read_set(index)
                    line.expect("|-")
                    table[X] = table.get(X, 0) | bit(line.ident(index, "token id"))
                    if not line.at_end():
                        line.expect(";")
                tables[i] = table
        elif keyword == "truth":
            block.need("tokens", line, column)
            block.once("truth", line, column)
            truth = tokens[line.ident(index, "token id")]
        else:
            raise ParseError(line.number, column, "tokens, con, ent, truth or end", keyword)
        line.finish()
    else:
        raise ParseError(head.number, 1, "end")
    return InformationFrame(tokens, [cons.get(i, []) for i in range(len(tokens))],
                            [tables.get(i, {}) for i in range(len(tokens))], truth=truth)


def _parse_poset(lines: Iterator[_Line], head: _Line) -> FinitePoset:
    block = _Block()
    elements: List[str] = []
    index: Dict[str, int] = {}
    pairs: List[Tuple[str, str]] = []
    for line in lines:
        column = line.column()
        keyword = line.take("poset section")
        if keyword == "end":
            line.finish()
            break
        if keyword == "elements":
            block.once("elements", line, column)
            elements = line.rest("element id")
            index = _declared(elements, line, column)
        elif keyword == "leq":
            block.need("elements", line, column)
            x = line.ident(index, "element id")
            line.expect("<=")
            y = line.ident(index, "element id")
            pairs.append((elements[x], elements[y]))
        else:
            raise ParseError(line.number, column, "elements, leq or end", keyword)
        line.finish()
    else:
        raise ParseError(head.number, 1, "end")
    return validate_poset(elements, pairs, add_reflexive=True)


def _parse_cfspace(lines: Iterator[_Line], head: _Line) -> CFSpace:
    block = _Block()
    universe: List[str] = []
    index: Dict[str, int] = {}
    theta = []
    family: List[int] = []
    for line in lines:
        column = line.column()
        keyword = line.take("cfspace section")
        if keyword == "end":
            line.finish()
            break
        if keyword == "universe":
            block.once("universe", line, column)
            universe = line.rest("element id")
            index = _declared(universe, line, column)
        elif keyword == "theta":
            block.need("universe", line, column)
            x = line.ident(index, "element id")
            line.expect("->")
            theta.append((x, line.ident(index, "element id")))
        elif keyword == "family":
            block.need("universe", line, column)
            block.once("family", line, column)
            family = line.read_sets(index)
        else:
            raise ParseError(line.number, column, "universe, theta, family or end", keyword)
        line.finish()
    else:
        raise ParseError(head.number, 1, "end")
    matrix = np.zeros((len(universe), len(universe)), dtype=bool)
    for x, y in theta:
        matrix[x, y] = True
    return CFSpace(universe, matrix, family)


def _endpoints(head: _Line, doc: Document, kind: str) -> Tuple[str, str]:
    head.expect(":")
    names = []
    for position in range(2):
        column = head.column()
        name = head.take(f"{kind} name")
        if name not in doc.structures or kind_of(doc.structures[name]) != kind:
            raise UnknownTokenError(name, head.number, column)
        names.append(name)
        if position == 0:
            head.expect("->")
    return names[0], names[1]


def _parse_mapping(lines: Iterator[_Line], head: _Line, source: InformationFrame,
                   target: InformationFrame) -> ApproximableMapping:
    block = _Block()
    tables: List[Dict[int, int]] = [dict() for _ in range(source.n)]
    for line in lines:
        column = line.column()
        keyword = line.take("mapping section")
        if keyword == "end":
            line.finish()
            break
        if keyword != "h":
            raise ParseError(line.number, column, "h or end", keyword)
        token_column = line.column()
        i = line.ident(source.index, "source token id")
        block.once(f"h {source.tokens[i]}", line, token_column)
        line.expect(":")
        while not line.at_end():
            X = line.read_set(source.index)
            line.expect("=>")
            b = line.ident(target.index, "target token id")
            tables[i][X] = tables[i].get(X, 0) | bit(b)
            if not line.at_end():
                line.expect(";")
        line.finish()
    else:
        raise ParseError(head.number, 1, "end")
    return ApproximableMapping(source, target, tables)


def _parse_cfrelation(lines: Iterator[_Line], head: _Line, source: CFSpace,
                      target: CFSpace) -> CFRelation:
    pairs = []
    for line in lines:
        column = line.column()
        keyword = line.take("cfrelation section")
        if keyword == "end":
            line.finish()
            break
        if keyword != "d":
            raise ParseError(line.number, column, "d or end", keyword)
        F = line.read_set(source.index)
        line.expect("=>")
        pairs.append((F, line.read_set(target.index)))
        line.finish()
    else:
        raise ParseError(head.number, 1, "end")
    return CFRelation(source, target, pairs)


_OBJECT_PARSERS: Dict[str, Callable[[Iterator[_Line], _Line], Structure]] = {
    'poset': _parse_poset,
    'frame': _parse_frame,
    'cfspace': _parse_cfspace,
}

# morphism kind -> (parser, endpoint kind)
_MORPHISM_PARSERS = {
    'mapping': (_parse_mapping, 'frame'),
    'cfrelation': (_parse_cfrelation, 'cfspace'),
}


def _lines(text: str) -> Iterator[_Line]:
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        if content.strip():
            yield _Line(number, content)


def parse(text: str) -> Document:
    """
    Parse a dfk-format v1 document.

    Raises:
        ParseError: on a missing header, a malformed line or a missing ``end``
        UnknownTokenError: on an undeclared id or endpoint name
        DuplicateSectionError: on a repeated section or block name
    """
    first = next((n for n, raw in enumerate(text.splitlines(), start=1) if raw.strip()), None)
    if first is None or text.splitlines()[first - 1].strip() != HEADER:
        raise ParseError(first or 1, 1, repr(HEADER))

    doc = Document()
    lines = _lines(text)
    for head in lines:
        column = head.column()
        kind = head.take("block kind")
        if kind not in KINDS:
            raise ParseError(head.number, column, " or ".join(KINDS), kind)
        name_column = head.column()
        name = head.take("block name")
        if name in doc.structures:
            raise DuplicateSectionError(name, head.number, name_column)
        if kind in _MORPHISM_PARSERS:
            parser, endpoint_kind = _MORPHISM_PARSERS[kind]
            source, target = _endpoints(head, doc, endpoint_kind)
            head.finish()
            structure = parser(lines, head, doc.structures[source], doc.structures[target])
            doc.add(name, structure, source, target)
        else:
            head.finish()
            doc.add(name, _OBJECT_PARSERS[kind](lines, head))
    logger.debug("parsed %d structures", len(doc))
    return doc


def load(path: str) -> Document:
    with open(path, "r", encoding="utf-8") as handle:
        return parse(handle.read())


# Serialization

def _set(mask: int, names) -> str:
    inner = " ".join(names[k] for k in members(mask))
    return "{ " + inner + " }" if inner else "{ }"


def _frame_lines(frame: InformationFrame) -> List[str]:
    out = ["tokens " + " ".join(frame.tokens)]
    for i, token in enumerate(frame.tokens):
        sets = " ".join(_set(X, frame.tokens) for X in frame.consistent_sets(i))
        out.append(f"con {token} :" + (" " + sets if sets else ""))
    for i, token in enumerate(frame.tokens):
        entries = [
            f"{_set(X, frame.tokens)} |- {frame.tokens[a]}"
            for X in frame.consistent_sets(i) for a in members(frame.closure(i, X))
        ]
        if entries:
            out.append(f"ent {token} : " + " ; ".join(entries))
    if frame.truth is not None:
        out.append(f"truth {frame.truth}")
    return out


def _poset_lines(poset: FinitePoset) -> List[str]:
    out = ["elements " + " ".join(poset.elements)]
    for x, y in np.argwhere(poset.leq):
        if x != y:
            out.append(f"leq {poset.elements[x]} <= {poset.elements[y]}")
    return out


def _cfspace_lines(space: CFSpace) -> List[str]:
    out = ["universe " + " ".join(space.universe)]
    out.extend(f"theta {x} -> {y}" for x, y in space.pairs())
    sets = " ".join(_set(F, space.universe) for F in space.family)
    out.append("family" + (" " + sets if sets else ""))
    return out


def _mapping_lines(h: ApproximableMapping) -> List[str]:
    src, tgt = h.source, h.target
    out = []
    for i, token in enumerate(src.tokens):
        entries = [
            f"{_set(X, src.tokens)} => {tgt.tokens[b]}"
            for X in src.consistent_sets(i) for b in members(h.image(i, X))
        ]
        if entries:
            out.append(f"h {token} : " + " ; ".join(entries))
    return out


def _cfrelation_lines(d: CFRelation) -> List[str]:
    return [
        f"d {_set(F, d.source.universe)} => {_set(G, d.target.universe)}"
        for F, G in d.sorted_pairs()
    ]


_WRITERS = {
    'poset': _poset_lines,
    'frame': _frame_lines,
    'cfspace': _cfspace_lines,
    'mapping': _mapping_lines,
    'cfrelation': _cfrelation_lines,
}


def serialize(item: Union[Document, Structure], name: str = "S") -> str:
    """
    Canonical text for a document, or for one structure under name.

    A lone morphism is written together with its endpoint structures.
    """
    if isinstance(item, Document):
        doc = item
    else:
        doc = Document()
        if kind_of(item) in ("mapping", "cfrelation"):
            doc.add(f"{name}_source", item.source)
            if item.target != item.source:
                doc.add(f"{name}_target", item.target)
        doc.add(name, item)

    blocks = [HEADER]
    for kind in KINDS:
        for block_name in sorted(n for n, s in doc if kind_of(s) == kind):
            structure = doc.structures[block_name]
            head = f"{kind} {block_name}"
            if block_name in doc.links:
                source, target = doc.links[block_name]
                head += f" : {source} -> {target}"
            blocks.append("\n".join([head] + _WRITERS[kind](structure) + ["end"]))
    return "\n\n".join(blocks) + "\n"


def dump(item: Union[Document, Structure], path: str, name: str = "S"):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize(item, name))


__all__ = ["Document", "HEADER", "KINDS", "kind_of", "parse", "serialize", "load", "dump"]
