"""Taxonomy loaders: WordNet 3.x database files and a simple line format.

Simple format, one directive per line; lines starting with ``#`` are
comments::

    N <id> <lemma>[,<lemma>...] [| gloss]
    E <child> <parent>
"""

from __future__ import annotations

import hashlib
import logging
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import DanglingEdge, EmptyDatabase, MalformedLine, ParseError
from .taxonomy import Taxonomy, build_taxonomy, normalize_lemma

log = logging.getLogger(__name__)

POINTER_SYMBOLS = frozenset(
    "! @ @i ~ ~i #m #s #p %m %s %p = + ;c -c ;r -r ;u -u * > ^ $ & < \\".split()
)
HYPERNYM_POINTERS = ("@", "@i")
SS_TYPES = frozenset("nvasr")

_TOKEN = re.compile(rb"\S+")
_ADJ_MARKER = re.compile(r"\((?:a|p|ip)\)$")


@dataclass(frozen=True)
class RawSynsetRecord:
    offset: int
    lex_filenum: int
    pos: str
    words: tuple[tuple[str, int], ...]
    pointers: tuple[tuple[str, int, str], ...]
    gloss: str


def parse_data_line(line) -> RawSynsetRecord:
    """Parse one synset line of a WordNet ``data.<pos>`` file.

    ``w_cnt`` and ``lex_id`` are hexadecimal, ``p_cnt`` is decimal, and
    the offset is a zero-padded decimal.  Errors report the byte position
    of the offending token.
    """
    raw = line.encode("utf-8") if isinstance(line, str) else bytes(line)
    raw = raw.rstrip(b"\r\n")
    bar = raw.find(b" | ")
    if bar < 0 and raw.endswith(b" |"):
        bar = len(raw) - 2
    head = raw if bar < 0 else raw[:bar]
    gloss = "" if bar < 0 else raw[bar + 3:].decode("utf-8", "replace").strip()
    toks = [(m.start(), m.group().decode("utf-8", "replace")) for m in _TOKEN.finditer(head)]
    pos_end = len(head)
    i = 0

    def take(what):
        nonlocal i
        if i >= len(toks):
            raise MalformedLine(f"unexpected end of line, expected {what}", position=pos_end)
        tok = toks[i]
        i += 1
        return tok

    def need(cond, tok, what):
        if not cond:
            raise MalformedLine(f"bad {what} {tok[1]!r}", position=tok[0])

    tok = take("offset")
    need(tok[1].isdigit() and len(tok[1]) == 8, tok, "synset offset")
    offset = int(tok[1])
    tok = take("lex_filenum")
    need(tok[1].isdigit() and len(tok[1]) == 2, tok, "lex_filenum")
    lex_filenum = int(tok[1])
    tok = take("ss_type")
    need(tok[1] in SS_TYPES, tok, "ss_type")
    ss_type = tok[1]
    tok = take("w_cnt")
    need(_is_hex(tok[1], 2), tok, "w_cnt")
    w_cnt = int(tok[1], 16)
    need(w_cnt > 0, tok, "w_cnt")
    words = []
    for _ in range(w_cnt):
        wtok = take("word")
        ltok = take("lex_id")
        need(_is_hex(ltok[1], 1), ltok, "lex_id")
        words.append((wtok[1], int(ltok[1], 16)))
    tok = take("p_cnt")
    need(tok[1].isdigit() and len(tok[1]) == 3, tok, "p_cnt")
    pointers = []
    for _ in range(int(tok[1])):
        stok = take("pointer symbol")
        need(stok[1] in POINTER_SYMBOLS, stok, "pointer symbol")
        otok = take("pointer offset")
        need(otok[1].isdigit() and len(otok[1]) == 8, otok, "pointer offset")
        ptok = take("pointer pos")
        need(ptok[1] in SS_TYPES, ptok, "pointer pos")
        xtok = take("source/target")
        need(_is_hex(xtok[1], 4), xtok, "source/target")
        pointers.append((stok[1], int(otok[1]), ptok[1]))
    if ss_type == "v" and i < len(toks):
        tok = take("f_cnt")
        need(tok[1].isdigit() and len(tok[1]) == 2, tok, "f_cnt")
        for _ in range(int(tok[1])):
            plus = take("frame marker")
            need(plus[1] == "+", plus, "frame marker")
            fnum = take("f_num")
            need(fnum[1].isdigit() and len(fnum[1]) == 2, fnum, "f_num")
            wnum = take("w_num")
            need(_is_hex(wnum[1], 2), wnum, "w_num")
    if i < len(toks):
        raise MalformedLine(f"unexpected token {toks[i][1]!r}", position=toks[i][0])
    return RawSynsetRecord(offset, lex_filenum, ss_type, tuple(words), tuple(pointers), gloss)


def _is_hex(tok: str, width: int) -> bool:
    return len(tok) == width and all(c in "0123456789abcdefABCDEF" for c in tok)


def _is_license(line: bytes) -> bool:
    return line.startswith(b"  ")


def iter_data_records(data_path):
    """Yield ``(line_number, RawSynsetRecord)`` for every non-license line."""
    with open(data_path, "rb") as fh:
        for lineno, line in enumerate(fh, start=1):
            if _is_license(line) or not line.strip():
                continue
            try:
                yield lineno, parse_data_line(line)
            except MalformedLine as exc:
                raise MalformedLine(str(exc), position=None, line=lineno, path=str(data_path)) from exc


def _clean_word(word: str, pos: str) -> str:
    if pos in ("a", "s"):
        word = _ADJ_MARKER.sub("", word)
    return normalize_lemma(word)


def parse_index_line(line: str):
    """Return ``(lemma, pos, [offsets])`` for one ``index.<pos>`` line."""
    toks = line.split()
    try:
        lemma, pos = toks[0], toks[1]
        synset_cnt, p_cnt = int(toks[2]), int(toks[3])
        rest = toks[4 + p_cnt:]
        sense_cnt = int(rest[0])
        offsets = [int(o) for o in rest[2:]]
    except (IndexError, ValueError):
        raise MalformedLine("bad index line") from None
    if len(offsets) != synset_cnt or sense_cnt != synset_cnt:
        raise MalformedLine(f"index line declares {synset_cnt} synsets, lists {len(offsets)}")
    return normalize_lemma(lemma), pos, offsets


def load_wordnet(index_path, data_path, pos: str = "n") -> Taxonomy:
    """Build a taxonomy from one part of speech of a WordNet database.

    Parent edges come from ``@`` and ``@i`` pointers only.  Lemmas come
    from the data file words plus the index file entries.
    """
    if pos not in SS_TYPES:
        raise ValueError(f"unknown part of speech {pos!r}")
    data_path = Path(data_path)
    if not data_path.exists():
        raise OSError(f"no such file: {data_path}")
    lemmas: dict[int, list[str]] = {}
    glosses: dict[int, str] = {}
    edges: list[tuple[int, int]] = []
    for _, rec in iter_data_records(data_path):
        if rec.pos != pos and not (pos == "a" and rec.pos == "s"):
            continue
        lemmas[rec.offset] = [_clean_word(w, rec.pos) for w, _ in rec.words]
        glosses[rec.offset] = rec.gloss
        for sym, target, tpos in rec.pointers:
            if sym in HYPERNYM_POINTERS and tpos == rec.pos:
                edges.append((rec.offset, target))
    if not lemmas:
        raise EmptyDatabase(f"{data_path}: no synset records")

    if index_path is not None:
        with open(index_path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if line.startswith("  ") or not line.strip():
                    continue
                try:
                    lemma, ipos, offsets = parse_index_line(line)
                except MalformedLine as exc:
                    raise MalformedLine(str(exc), line=lineno, path=str(index_path)) from exc
                for off in offsets:
                    if off not in lemmas:
                        raise DanglingEdge(f"{index_path}:{lineno}: {lemma!r} points to missing offset {off:08d}", off)
                    if lemma not in lemmas[off]:
                        lemmas[off].append(lemma)

    def sid(off):
        return f"{pos}-{off:08d}"

    for child, parent in edges:
        if parent not in lemmas:
            raise DanglingEdge(f"synset {child:08d} has hypernym pointer to missing offset {parent:08d}", parent)
    taxonomy = build_taxonomy(
        [(sid(o), lemmas[o], glosses[o]) for o in sorted(lemmas)],
        sorted({(sid(c), sid(p)) for c, p in edges}),
    )
    taxonomy.source_checksum = file_checksum(data_path)
    return taxonomy


def file_checksum(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            h.update(block)
    return h.hexdigest()


# ------------------------------------------------------------- simple format

def parse_simple_taxonomy(text: str, source="<string>") -> Taxonomy:
    nodes, edges = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.strip()
        if not body or body.startswith("#"):
            continue
        directive = body.split(None, 1)[0]
        if directive == "N":
            gloss = None
            if " | " in body:
                body, gloss = body.split(" | ", 1)
                gloss = gloss.strip()
            parts = body.split(None, 2)
            if len(parts) != 3:
                raise ParseError("node line needs an id and at least one lemma", path=source, line=lineno)
            lemmas = [w.strip() for w in parts[2].split(",") if w.strip()]
            if not lemmas:
                raise ParseError("node line needs at least one lemma", path=source, line=lineno)
            nodes.append((parts[1], lemmas, gloss))
        elif directive == "E":
            parts = body.split()
            if len(parts) != 3:
                raise ParseError("edge line needs exactly a child and a parent", path=source, line=lineno)
            edges.append((parts[1], parts[2]))
        else:
            raise ParseError(f"unknown directive {directive!r}", path=source, line=lineno)
    if not nodes:
        raise EmptyDatabase(f"{source}: no node lines")
    return build_taxonomy(nodes, edges)


def load_simple_taxonomy(path) -> Taxonomy:
    path = Path(path)
    taxonomy = parse_simple_taxonomy(path.read_text(encoding="utf-8"), source=str(path))
    taxonomy.source_checksum = file_checksum(path)
    return taxonomy


def dump_simple_taxonomy(t: Taxonomy) -> str:
    """Canonical serialization: nodes sorted by id, then sorted edges."""
    out = []
    for sid in sorted(t.synsets):
        syn = t.synsets[sid]
        line = f"N {sid} {','.join(syn.lemmas)}"
        if syn.gloss:
            line += f" | {' '.join(syn.gloss.split())}"
        out.append(line)
    out.extend(f"E {c} {p}" for c, p in t.edges())
    return "\n".join(out) + "\n"
