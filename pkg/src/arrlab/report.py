"""Analysis reports: assembly, JSON round trip and text rendering."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .arrangement import Incidence, euler_characteristic_complement
from .esv import check_condition, check_condition_strata, divisors_above_one, esv_verdict
from .mgraph import build_mgraph, classify

CONVENTION = "lambda = exp(-2*pi*i*k/d) with k = d/m; dimensions are conjugation invariant"


@dataclass(frozen=True)
class MGraphInfo:
    m: int
    efficiency: str
    complexity: int
    reduced: bool
    unsaturated: bool
    connected: bool
    vertices: int
    edges: int


@dataclass(frozen=True)
class VerdictInfo:
    m: int
    status: str
    condition: str | None = None
    witness: list[int] | None = None
    witness_valid: bool | None = None
    quick_flags: list[str] = field(default_factory=list)
    search_nodes: int | None = None
    lower_bound: int | None = None
    h1: int | None = None
    h2: int | None = None
    dimensions_are_lower_bounds: bool | None = None


@dataclass(frozen=True)
class Report:
    name: str | None
    degree: int
    strata: dict[str, int]
    euler_characteristic: int
    convention: str
    mgraphs: list[MGraphInfo]
    verdicts: list[VerdictInfo]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, obj: dict) -> Report:
        return cls(
            name=obj["name"],
            degree=obj["degree"],
            strata=dict(obj["strata"]),
            euler_characteristic=obj["euler_characteristic"],
            convention=obj["convention"],
            mgraphs=[MGraphInfo(**g) for g in obj["mgraphs"]],
            verdicts=[VerdictInfo(**v) for v in obj["verdicts"]],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))

    @property
    def budget_exhausted(self) -> bool:
        return any(v.status == "unknown_budget" for v in self.verdicts)

    def to_text(self, show_witness: bool = False) -> str:
        out = [f"arrangement: {self.name or '(unnamed)'}",
               f"degree: {self.degree}",
               "strata: " + ", ".join(f"mult {k}: {v}" for k, v in self.strata.items()),
               f"chi(U): {self.euler_characteristic}",
               f"eigenvalues: {self.convention}"]
        for g in self.mgraphs:
            out.append(
                f"m={g.m} graph: {g.vertices} vertices, {g.edges} edges, efficiency {g.efficiency}, "
                f"complexity {g.complexity}, reduced={g.reduced}, unsaturated={g.unsaturated}, "
                f"connected={g.connected}")
        for v in self.verdicts:
            line = f"m={v.m}: {v.status}"
            if v.status == "calculable":
                line += f" via condition ({v.condition}), found by {', '.join(v.quick_flags)}"
                if show_witness:
                    line += f"; witness J = {v.witness} ({'valid' if v.witness_valid else 'INVALID'})"
            if v.lower_bound is not None:
                line += f"; Aomoto lower bound {v.lower_bound}"
            if v.h1 is not None:
                tag = " (lower bounds)" if v.dimensions_are_lower_bounds else ""
                line += f"; h1 = {v.h1}, h2 = {v.h2}{tag}"
            out.append(line)
        return "\n".join(out) + "\n"


def build_report(inc: Incidence, ms: Sequence[int] | None = None, *, aomoto: bool = False,
                 lower_bound_budget: int = 0, node_budget: int | None = None,
                 time_budget: float | None = None) -> Report:
    """Analyze ``inc`` for the given m (all divisors > 1 of d by default)."""
    targets = divisors_above_one(inc.degree) if ms is None else list(dict.fromkeys(ms))
    for m in targets:
        if m < 2:
            raise ValueError(f"m must be at least 2, got {m}")
    chi = euler_characteristic_complement(inc)
    graphs = []
    for m in targets:
        if m >= 3:
            g = build_mgraph(inc, m)
            s = classify(g)
            graphs.append(MGraphInfo(m, str(s.efficiency), s.complexity, s.reduced, s.unsaturated,
                                     s.connected, len(g.vertices), len(g.edges)))
    verdicts = []
    for m in targets:
        v = esv_verdict(inc, m, lower_bound_budget, node_budget, time_budget)
        info = dict(m=m, status=v.status, quick_flags=list(v.quick_flags), search_nodes=v.nodes,
                    lower_bound=v.lower_bound)
        if v.witness is not None:
            J = list(v.witness.J)
            info.update(condition=v.witness.condition, witness=J,
                        witness_valid=check_condition(inc, m, J, v.witness.condition)
                        and check_condition_strata(inc, m, J, v.witness.condition))
        if aomoto:
            from .aomoto import eigenspace_dimension
            if v.status == "vanishes_m_not_dividing_d":
                info.update(h1=0, h2=0, dimensions_are_lower_bounds=False)
            elif v.status != "unknown_budget":
                e = eigenspace_dimension(inc, m, verdict=v)
                info.update(h1=e.h1, h2=e.h2, dimensions_are_lower_bounds=e.lower_bound)
        verdicts.append(VerdictInfo(**info))
    strata = {str(k): c for k, c in inc.strata_counts().items()}
    return Report(inc.name, inc.degree, strata, chi, CONVENTION, graphs, verdicts)

