"""Line-oriented instance files: one (S, A, beta) triple per file.

Sections are [semigroup], [ring], [action], [options].  The semigroup is
either an explicit table (with optional zero) or a generators+relations
presentation saturated on load; the ring is an ordered atom list; the
action lists one map per element as an atom matching with twist powers
(domain and image supports may be stated for cross-checking, everything
else is recomputed by validation).  Errors carry line positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .actions import validate_action
from .rings import Atom, FiniteRing, StructuredIso
from .semigroups import saturate_presentation, validate_table


class ParseError(Exception):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class InstanceFile:
    semigroup: object
    ring: object
    action: object
    options: dict = field(default_factory=dict)


def _split_sections(text):
    sections = {}
    current = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ParseError(no, f"content before any section header: {line!r}")
        sections[current].append((no, line))
    return sections


def _parse_word(token_list, gen_index, line_no):
    word = []
    for tok in token_list:
        if tok == "1":
            continue
        inv = tok.endswith("'")
        name = tok[:-1] if inv else tok
        if name not in gen_index:
            raise ParseError(line_no, f"unknown generator {name!r}")
        g = gen_index[name]
        word.append(g + len(gen_index) if inv else g)
    return tuple(word)


def _parse_semigroup(lines):
    generators = None
    relations = []
    elements = None
    table_rows = []
    zero = None
    it = iter(lines)
    for no, line in it:
        if "=" not in line and not table_rows and elements is None:
            raise ParseError(no, f"expected key = value, got {line!r}")
        if elements is not None and "=" not in line:
            table_rows.append((no, line.split()))
            continue
        key, _, val = line.partition("=")
        key = key.strip().lower()
        val = val.strip()
        if key == "generators":
            generators = val.split()
        elif key == "relation":
            if ":" not in val:
                raise ParseError(no, "relation needs the form  word : word")
            lhs, rhs = val.split(":", 1)
            relations.append((no, lhs.split(), rhs.split()))
        elif key == "elements":
            elements = val.split()
        elif key == "row":
            table_rows.append((no, val.split()))
        elif key == "zero":
            zero = (no, val)
        else:
            raise ParseError(no, f"unknown semigroup key {key!r}")
    if generators is not None:
        if elements is not None or table_rows:
            raise ParseError(lines[0][0], "give either a presentation or a table, not both")
        gen_index = {g: i for i, g in enumerate(generators)}
        rels = [(_parse_word(l, gen_index, no), _parse_word(r, gen_index, no))
                for no, l, r in relations]
        S = saturate_presentation(generators, rels)
        if zero is not None:
            raise ParseError(zero[0], "zero is only available with explicit tables")
        return S
    if elements is None:
        raise ParseError(lines[0][0] if lines else 1, "semigroup needs elements or generators")
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise ParseError(lines[0][0], "duplicate element names")
    n = len(elements)
    if len(table_rows) != n:
        raise ParseError(lines[-1][0], f"expected {n} table rows, got {len(table_rows)}")
    table = []
    for no, row in table_rows:
        if len(row) != n:
            raise ParseError(no, f"row has {len(row)} entries, expected {n}")
        try:
            table.append([index[x] for x in row])
        except KeyError as exc:
            raise ParseError(no, f"unknown element {exc.args[0]!r} in row") from None
    zidx = None
    if zero is not None:
        no, val = zero
        if val not in index:
            raise ParseError(no, f"unknown zero element {val!r}")
        zidx = index[val]
    return validate_table(table, zero=zidx, names=elements)


def _parse_ring(lines):
    atoms = []
    for no, line in lines:
        key, _, val = line.partition("=")
        if key.strip().lower() != "atom":
            raise ParseError(no, f"unknown ring key {key.strip()!r}")
        parts = val.split()
        if not parts:
            raise ParseError(no, "empty atom spec")
        kind = parts[0].lower()
        try:
            if kind == "zmod":
                p, k = int(parts[1]), int(parts[2]) if len(parts) > 2 else 1
                atoms.append(Atom.zmod(p, k))
            elif kind == "gf":
                p, k = int(parts[1]), int(parts[2])
                poly = None
                for extra in parts[3:]:
                    if extra.startswith("poly="):
                        poly = tuple(int(c) for c in extra[5:].split(","))
                atoms.append(Atom.gf(p, k, poly))
            else:
                raise ParseError(no, f"unknown atom kind {kind!r}")
        except ParseError:
            raise
        except Exception as exc:
            raise ParseError(no, f"bad atom spec: {exc}") from None
    if not atoms:
        raise ParseError(lines[0][0] if lines else 1, "ring needs at least one atom")
    return FiniteRing(atoms)


def _parse_action(lines, S, A):
    isos = {}
    name_index = {S.names[i]: i for i in range(S.n)}
    for no, line in lines:
        key, _, val = line.partition("=")
        if key.strip().lower() != "map":
            raise ParseError(no, f"unknown action key {key.strip()!r}")
        if ":" not in val:
            raise ParseError(no, "map needs the form  element : pairs")
        name, spec = val.split(":", 1)
        name = name.strip()
        if name not in name_index:
            raise ParseError(no, f"unknown element {name!r}")
        matching = {}
        twist = {}
        dom_stated = im_stated = None
        for tok in spec.split():
            if tok.startswith("dom="):
                dom_stated = _atom_set(tok[4:], no)
                continue
            if tok.startswith("im="):
                im_stated = _atom_set(tok[3:], no)
                continue
            if tok == "empty":
                continue
            if "->" not in tok:
                raise ParseError(no, f"bad matching token {tok!r}")
            src, dst = tok.split("->", 1)
            tw = 0
            if ":" in dst:
                dst, tw = dst.split(":", 1)
            try:
                i, j, tw = int(src), int(dst), int(tw)
            except ValueError:
                raise ParseError(no, f"bad matching token {tok!r}") from None
            if not (0 <= i < len(A.atoms) and 0 <= j < len(A.atoms)):
                raise ParseError(no, f"atom index out of range in {tok!r}")
            matching[i] = j
            twist[i] = tw
        try:
            iso = StructuredIso(A, matching, twist)
        except Exception as exc:
            raise ParseError(no, f"bad map for {name!r}: {exc}") from None
        if dom_stated is not None and iso.dom_support != dom_stated:
            raise ParseError(no, f"stated dom {sorted(dom_stated)} differs from "
                                 f"matching domain {sorted(iso.dom_support)}")
        if im_stated is not None and iso.im_support != im_stated:
            raise ParseError(no, f"stated im {sorted(im_stated)} differs from "
                                 f"matching image {sorted(iso.im_support)}")
        if name in isos:
            raise ParseError(no, f"duplicate map for {name!r}")
        isos[name] = iso
    missing = [S.names[i] for i in range(S.n) if S.names[i] not in isos]
    if missing:
        raise ParseError(lines[-1][0] if lines else 1,
                         f"missing maps for elements: {', '.join(missing)}")
    return [isos[S.names[i]] for i in range(S.n)]


def _atom_set(text, no):
    if not text:
        return frozenset()
    try:
        return frozenset(int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(no, f"bad atom set {text!r}") from None


_BOOL = {"true": True, "false": False, "yes": True, "no": False, "1": True, "0": False}


def _parse_options(lines):
    out = {}
    for no, line in lines:
        key, _, val = line.partition("=")
        key = key.strip().lower().replace("_", "-")
        val = val.strip()
        if key in ("seed", "guard-max-order"):
            try:
                out[key] = int(val)
            except ValueError:
                raise ParseError(no, f"{key} needs an integer") from None
        elif key == "brute-force-subalgebras":
            if val.lower() not in _BOOL:
                raise ParseError(no, f"{key} needs a boolean")
            out[key] = _BOOL[val.lower()]
        else:
            raise ParseError(no, f"unknown option {key!r}")
    return out


def parse_instance_text(text):
    sections = _split_sections(text)
    unknown = set(sections) - {"semigroup", "ring", "action", "options"}
    if unknown:
        raise ParseError(1, f"unknown sections: {sorted(unknown)}")
    if "semigroup" not in sections:
        raise ParseError(1, "missing [semigroup] section")
    if "ring" not in sections:
        raise ParseError(1, "missing [ring] section")
    if "action" not in sections:
        raise ParseError(1, "missing [action] section")
    S = _parse_semigroup(sections["semigroup"])
    A = _parse_ring(sections["ring"])
    isos = _parse_action(sections["action"], S, A)
    beta = validate_action(S, A, isos)
    options = _parse_options(sections.get("options", []))
    return InstanceFile(S, A, beta, options)


def parse_instance(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if not text.strip():
        raise ParseError(1, "empty instance file")
    return parse_instance_text(text)


def action_to_instance_text(beta, comment=None):
    """Serialize a validated action back into the file format."""
    S, A = beta.S, beta.A
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append("[semigroup]")
    lines.append("elements = " + " ".join(S.names))
    for row in S.table:
        lines.append("row = " + " ".join(S.names[x] for x in row))
    if S.zero is not None:
        lines.append(f"zero = {S.names[S.zero]}")
    lines.append("")
    lines.append("[ring]")
    for a in A.atoms:
        if a.kind == "zmod":
            lines.append(f"atom = zmod {a.p} {a.k}")
        else:
            lines.append(f"atom = gf {a.p} {a.k} poly={','.join(map(str, a.poly))}")
    lines.append("")
    lines.append("[action]")
    for s in range(S.n):
        iso = beta.isos[s]
        if not iso.matching:
            spec = "empty"
        else:
            spec = " ".join(f"{i}->{j}:{iso.twist[i]}" for i, j in sorted(iso.matching.items()))
        lines.append(f"map = {S.names[s]} : {spec}")
    return "\n".join(lines) + "\n"
