"""Weight diagrams of the m-th fundamental representation of A_{n-1}.

Vertices are the m-subsets of [n].  The simple root alpha_k joins I to
I - {k+1} + {k} whenever k+1 is in I and k is not.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .calculus import Tag, classify_commutator
from .indexing import Index, WedgeSpec

FORMATS = ("dot", "tikz", "json")


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class DiagramSpec:
    n: int
    m: int
    highlight_root: int | None = None
    format: str = "dot"
    classify: tuple[Index, Index] | None = None

    def __post_init__(self):
        if not 1 <= self.m < self.n:
            raise DiagramError(f"need 1 <= m < n, got n={self.n}, m={self.m}")
        if self.format not in FORMATS:
            raise DiagramError(f"unknown format {self.format!r}; expected one of {', '.join(FORMATS)}")
        if self.highlight_root is not None and not 1 <= self.highlight_root < self.n:
            raise DiagramError(f"simple root alpha_{self.highlight_root} does not exist for n={self.n}")


def diagram_edges(n: int, m: int) -> list[tuple[Index, Index, int]]:
    """All (source, target, k) in lex order of source, then k."""
    spec = WedgeSpec(n, m)
    out = []
    for I in spec.indices:
        for k in range(1, n):
            if k + 1 in I and k not in I:
                out.append((I, tuple(sorted(set(I) - {k + 1} | {k})), k))
    return out


def root_paths(n: int, m: int, k: int) -> list[tuple[Index, Index]]:
    return [(a, b) for a, b, r in diagram_edges(n, m) if r == k]


def _scenarios(spec: WedgeSpec, I: Index, J: Index) -> list[dict]:
    """Commutator class of [t_{I,J}, W t_{k+1,k}] and [t_{I,J}, W t_{k,k+1}] per simple root."""
    out = []
    for k in range(1, spec.n):
        for j, i in ((k + 1, k), (k, k + 1)):
            cls = classify_commutator(I, J, j, i)
            item = {"root": [j, i], "class": cls.tag.value}
            if cls.tag not in (Tag.VANISHES, Tag.DEGENERATE):
                item["terms"] = [
                    {"I": spec.label(t.I), "J": spec.label(t.J), "sign": t.sign, "zeta_power": t.zeta_power}
                    for t in cls.template
                ]
            out.append(item)
    return out


def emit_diagram(d: DiagramSpec) -> str:
    spec = WedgeSpec(d.n, d.m)
    edges = diagram_edges(d.n, d.m)
    lab = spec.label
    hk = d.highlight_root
    if d.format == "json":
        doc: dict = {
            "n": d.n,
            "m": d.m,
            "vertices": [lab(I) for I in spec.indices],
            "edges": [{"from": lab(a), "to": lab(b), "root": k, "highlight": k == hk} for a, b, k in edges],
        }
        if hk is not None:
            doc["highlight_root"] = hk
            doc["highlight_paths"] = sum(1 for _, _, k in edges if k == hk)
        if d.classify is not None:
            I, J = d.classify
            doc["classify"] = {"I": lab(I), "J": lab(J), "scenarios": _scenarios(spec, I, J)}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if d.format == "dot":
        lines = [f'digraph "wedge_{d.n}_{d.m}" {{', "  rankdir=LR;", "  node [shape=plaintext];"]
        for I in spec.indices:
            lines.append(f'  "{lab(I)}";')
        for a, b, k in edges:
            style = ", color=red, penwidth=2" if k == hk else ""
            lines.append(f'  "{lab(a)}" -> "{lab(b)}" [label="{k}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    # tikz: vertices placed by weight height (sum of entries) and lex order within a level
    levels: dict[int, list[Index]] = {}
    for I in spec.indices:
        levels.setdefault(sum(I), []).append(I)
    lines = ["\\begin{tikzpicture}[>=stealth, every node/.style={font=\\small}]"]
    for s in sorted(levels):
        for row, I in enumerate(levels[s]):
            lines.append(f"  \\node ({lab(I).replace(',', '-')}) at ({s},{-row}) {{{lab(I)}}};")
    for a, b, k in edges:
        style = "->, thick, red" if k == hk else "->"
        lines.append(
            f"  \\draw[{style}] ({lab(a).replace(',', '-')}) -- node[above] {{{k}}} ({lab(b).replace(',', '-')});"
        )
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"
