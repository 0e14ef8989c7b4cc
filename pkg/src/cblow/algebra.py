"""Generators and relations of the graded algebra D(L, G).

One generator per element of G. Every non-nested subset gives a monomial
relation. The minimal ones already generate that part of the ideal, so by
default only they are listed. Each atom H also gives the linear relation
sum of x_G over G >= H.
"""
from dataclasses import dataclass
import itertools
import re

from cblow.building import TooLarge, building_set
from cblow.nested import nested_complex


class NotALattice(ValueError):
    pass


class UnknownFormat(ValueError):
    pass


FORMATS = ("generic", "cas-script")

_ESCAPES = {"(": "p", ")": "q", ",": "c", "[": "b", "]": "d", "{": "o", "}": "e", " ": ""}


def _body(label):
    text = str(label)
    if text.isalnum() and text.isascii():
        return text
    return "".join(
        ch if ch.isascii() and ch.isalnum() else _ESCAPES.get(ch, f"u{ord(ch)}") for ch in text
    ) or "g"


def symbols_for(labels):
    """Distinct symbols ``x_<label>`` in label order; clashes get an ``n2``, ``n3``... suffix."""
    out, used = [], set()
    for lab in labels:
        base = "x_" + _body(lab)
        sym, k = base, 1
        while sym in used:
            k += 1
            sym = f"{base}n{k}"
        used.add(sym)
        out.append(sym)
    return out


@dataclass(frozen=True)
class AlgebraPresentation:
    """``generators`` and ``labels`` are parallel; relations refer to generator symbols.

    ``linear_relations`` holds (atom symbol, tuple of (coefficient, symbol)) pairs.
    """

    generators: tuple
    labels: tuple
    monomial_relations: tuple
    linear_relations: tuple


def d_algebra(L, G, all_relations=False, max_generators=20):
    if not L.is_lattice():
        raise NotALattice("D(L, G) is defined for lattices; this semilattice has no top")
    B = building_set(L, G)
    verts = sorted(B.members, key=lambda g: str(L.labels[g]))
    syms = symbols_for([L.labels[g] for g in verts])
    sym = dict(zip(verts, syms))
    faces = {frozenset(f) for f in nested_complex(L, B).faces}
    if all_relations:
        if len(verts) > max_generators:
            raise TooLarge(f"{len(verts)} generators; listing every non-face is capped at {max_generators}")
        bad = [
            frozenset(S)
            for r in range(2, len(verts) + 1)
            for S in itertools.combinations(verts, r)
            if frozenset(S) not in faces
        ]
    else:
        bad = []
        for f in faces:
            for v in verts:
                if v in f:
                    continue
                S = f | {v}
                if S in faces or any(S - {u} not in faces for u in f):
                    continue
                if f and v < max(f):
                    continue
                bad.append(S)
    monomials = sorted({tuple(sorted(sym[v] for v in S)) for S in bad}, key=lambda m: (len(m), m))
    linear = []
    for h in L.atoms():
        terms = tuple(sorted((1, sym[g]) for g in verts if L.leq[h, g]))
        linear.append((sym[h], terms))
    linear.sort()
    return AlgebraPresentation(
        tuple(syms), tuple(str(L.labels[g]) for g in verts), tuple(monomials), tuple(linear)
    )


def _linear_text(terms, name=lambda s: s):
    parts = []
    for c, s in terms:
        parts.append(name(s) if c == 1 else f"{c}*{name(s)}")
    return " + ".join(parts)


def _m2_name(sym):
    return sym.replace("_", "", 1)


def export_presentation(p, fmt="generic"):
    if fmt == "generic":
        lines = ["GENERATORS"]
        lines += [f"{s} {lab}" for s, lab in zip(p.generators, p.labels)]
        lines.append("MONOMIAL_RELATIONS")
        lines += ["*".join(m) for m in p.monomial_relations]
        lines.append("LINEAR_RELATIONS")
        lines += [f"{a}: {_linear_text(t)}" for a, t in p.linear_relations]
        return "\n".join(lines) + "\n"
    if fmt == "cas-script":
        lines = ["-- D(L,G) presentation"]
        lines += [f"-- generator {_m2_name(s)} {lab}" for s, lab in zip(p.generators, p.labels)]
        lines.append("R = ZZ[" + ", ".join(_m2_name(s) for s in p.generators) + "];")
        entries = [("*".join(_m2_name(s) for s in m), "monomial") for m in p.monomial_relations]
        entries += [
            (_linear_text(t, _m2_name), f"linear {_m2_name(a)}") for a, t in p.linear_relations
        ]
        lines.append("I = ideal(")
        for k, (expr, tag) in enumerate(entries):
            comma = "," if k + 1 < len(entries) else ""
            lines.append(f"    {expr}{comma} -- {tag}")
        lines.append("    );")
        lines.append("D = R / I;")
        return "\n".join(lines) + "\n"
    raise UnknownFormat(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _parse_terms(text, name=lambda s: s):
    terms = []
    for part in text.split("+"):
        part = part.strip()
        if "*" in part:
            c, s = part.split("*", 1)
            terms.append((int(c), name(s.strip())))
        else:
            terms.append((1, name(part)))
    return tuple(terms)


def _from_m2(name):
    return name[0] + "_" + name[1:]


def parse_presentation(text):
    """Inverse of export_presentation for both formats."""
    lines = text.splitlines()
    if lines and lines[0] == "GENERATORS":
        gens, labels, mono, lin = [], [], [], []
        section = None
        for line in lines:
            if line in ("GENERATORS", "MONOMIAL_RELATIONS", "LINEAR_RELATIONS"):
                section = line
                continue
            if section == "GENERATORS":
                s, lab = line.split(" ", 1)
                gens.append(s)
                labels.append(lab)
            elif section == "MONOMIAL_RELATIONS":
                mono.append(tuple(line.split("*")))
            elif section == "LINEAR_RELATIONS":
                a, rhs = line.split(": ", 1)
                lin.append((a, _parse_terms(rhs)))
        return AlgebraPresentation(tuple(gens), tuple(labels), tuple(mono), tuple(lin))
    if lines and lines[0] == "-- D(L,G) presentation":
        gens, labels, mono, lin = [], [], [], []
        for line in lines[1:]:
            m = re.match(r"-- generator (\S+) (.*)$", line)
            if m:
                gens.append(_from_m2(m.group(1)))
                labels.append(m.group(2))
                continue
            m = re.match(r"\s+(.*?),? -- (monomial|linear (\S+))$", line)
            if m:
                expr = m.group(1)
                if m.group(2) == "monomial":
                    mono.append(tuple(_from_m2(s) for s in expr.split("*")))
                else:
                    lin.append((_from_m2(m.group(3)), _parse_terms(expr, _from_m2)))
        return AlgebraPresentation(tuple(gens), tuple(labels), tuple(mono), tuple(lin))
    raise UnknownFormat("text is not an exported presentation")
