"""Core data models for sigma-spectra."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple
import json

import numpy as np

from core.constants import SchemaInfo
from core.errors import BoundsError, ColouringError, InstanceValidationError, PartitionError


@dataclass(frozen=True)
class Partition:
    """Integer partition sigma of r, parts stored non-increasing."""
    parts: Tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise PartitionError("partition has no parts", [("parts non-empty", "empty list")])
        if any(not isinstance(p, int) or p < 1 for p in self.parts):
            raise PartitionError(
                f"partition parts must be positive integers: {list(self.parts)}",
                [("parts >= 1", str(list(self.parts)))],
            )
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise PartitionError(f"parts must be stored non-increasing: {list(self.parts)}")

    @property
    def r(self) -> int:
        return sum(self.parts)

    @property
    def delta_max(self) -> int:
        return self.parts[0]

    @property
    def delta_min(self) -> int:
        return self.parts[-1]

    @property
    def s(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> Dict[int, int]:
        """Part value -> number of times it occurs, largest part first."""
        counts: Dict[int, int] = {}
        for p in self.parts:
            counts[p] = counts.get(p, 0) + 1
        return counts

    def format(self) -> str:
        """Exponent notation, e.g. (2,1^5)."""
        chunks = []
        for value, mult in self.multiplicities().items():
            chunks.append(str(value) if mult == 1 else f"{value}^{mult}")
        return "(" + ",".join(chunks) + ")"

    def to_dict(self) -> List[int]:
        return list(self.parts)


@dataclass
class ValidationResult:
    """Outcome of validate_instance."""
    valid: bool
    degenerate: bool = False
    violations: List[Tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            'valid': self.valid,
            'degenerate': self.degenerate,
            'violations': [{'condition': c, 'message': m} for c, m in self.violations],
        }

    def raise_if_invalid(self) -> None:
        if not self.valid:
            detail = "; ".join(f"{c}: {m}" for c, m in self.violations)
            raise InstanceValidationError(f"invalid instance ({detail})", self.violations)


@dataclass(frozen=True)
class SigmaInstance:
    """The sigma-hypergraph H(n,r,q|sigma): n classes of q vertices, edges of size r."""
    n: int
    r: int
    q: int
    sigma: Partition

    def __post_init__(self):
        from core.partition import validate_instance

        validate_instance(self.n, self.r, self.q, self.sigma).raise_if_invalid()

    @property
    def vertex_count(self) -> int:
        return self.n * self.q

    @property
    def degenerate(self) -> bool:
        """No r-subset realises sigma, so the hypergraph has no edges."""
        return self.sigma.delta_max > self.q or self.sigma.s > self.n

    def label(self) -> str:
        return f"H({self.n},{self.r},{self.q}|{self.sigma.format()})"

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {'n': self.n, 'r': self.r, 'q': self.q, 'sigma': self.sigma.to_dict()}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SigmaInstance':
        """Create from dictionary; sigma may list its parts in any order."""
        from core.partition import normalize_partition

        return cls(
            n=data['n'],
            r=data['r'],
            q=data['q'],
            sigma=normalize_partition(list(data['sigma'])),
        )


@dataclass(frozen=True, order=True)
class VertexRef:
    """Vertex identity: class index and slot, both 0-based."""
    class_index: int
    slot: int

    def to_dict(self) -> List[int]:
        return [self.class_index, self.slot]


@dataclass(frozen=True)
class ColourBounds:
    """(alpha, beta): every edge must carry between alpha and beta distinct colours."""
    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha < 1:
            raise BoundsError(f"alpha must be >= 1, got {self.alpha}", [("alpha >= 1", str(self.alpha))])
        if self.beta < self.alpha:
            raise BoundsError(
                f"beta must be >= alpha, got ({self.alpha},{self.beta})",
                [("beta >= alpha", f"({self.alpha},{self.beta})")],
            )

    @classmethod
    def nmnr(cls, r: int) -> 'ColourBounds':
        """Non-monochromatic, non-rainbow: (2, r-1)."""
        return cls(2, r - 1)

    @classmethod
    def classical(cls, r: int) -> 'ColourBounds':
        """Proper (non-monochromatic) colouring: (2, r)."""
        return cls(2, r)

    def is_nmnr(self, r: int) -> bool:
        return self.alpha == 2 and self.beta == r - 1

    def validate_for(self, r: int) -> None:
        if self.beta > r:
            raise BoundsError(
                f"beta={self.beta} exceeds edge size r={r}", [("beta <= r", f"beta={self.beta}, r={r}")]
            )

    def label(self) -> str:
        return f"({self.alpha},{self.beta})"

    def to_dict(self) -> Dict[str, int]:
        return {'alpha': self.alpha, 'beta': self.beta}


@dataclass(frozen=True)
class Colouring:
    """
    Colour of every vertex, held class by class.

    Colours are exactly 1..k with every value present. Use from_raw to
    relabel an arbitrary positive assignment into that form.
    """
    classes: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.classes or not self.classes[0]:
            raise ColouringError("colouring has no vertices", [("non-empty", "no classes")])
        q = len(self.classes[0])
        if any(len(row) != q for row in self.classes):
            raise ColouringError("all classes must hold the same number of vertices",
                                 [("rectangular", str([len(row) for row in self.classes]))])
        values = {c for row in self.classes for c in row}
        if any(not isinstance(c, (int, np.integer)) or c < 1 for c in values):
            raise ColouringError("colours must be positive integers", [("colours >= 1", str(sorted(values)))])
        k = max(values)
        if len(values) != k:
            missing = sorted(set(range(1, k + 1)) - values)
            raise ColouringError(
                f"colours must be exactly 1..{k}; missing {missing}",
                [("surjective onto 1..k", f"missing {missing}")],
            )

    @classmethod
    def from_raw(cls, classes: Iterable[Iterable[int]]) -> 'Colouring':
        """Relabel present colours to 1..k preserving their order."""
        rows = [tuple(int(c) for c in row) for row in classes]
        present = sorted({c for row in rows for c in row})
        if present and present[0] < 1:
            raise ColouringError("colours must be positive integers", [("colours >= 1", str(present))])
        relabel = {c: i + 1 for i, c in enumerate(present)}
        return cls(tuple(tuple(relabel[c] for c in row) for row in rows))

    @property
    def k(self) -> int:
        return max(c for row in self.classes for c in row)

    @property
    def n(self) -> int:
        return len(self.classes)

    @property
    def q(self) -> int:
        return len(self.classes[0])

    def colour_of(self, vertex: VertexRef) -> int:
        return self.classes[vertex.class_index][vertex.slot]

    def check_shape(self, inst: SigmaInstance) -> None:
        if self.n != inst.n or self.q != inst.q:
            raise ColouringError(
                f"colouring is {self.n}x{self.q} but the instance has {inst.n} classes of {inst.q}",
                [("shape", f"{self.n}x{self.q} vs {inst.n}x{inst.q}")],
            )

    def to_dict(self) -> Dict[str, Any]:
        return {'classes': [list(row) for row in self.classes]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Colouring':
        """Create from the {"classes": [[...], ...]} format, normalising colours."""
        return cls.from_raw(data['classes'])


class VerdictStatus(Enum):
    """Outcome of checking one colouring."""
    VALID = "VALID"
    MONOCHROMATIC_EDGE = "MONOCHROMATIC_EDGE"
    RAINBOW_EDGE = "RAINBOW_EDGE"
    BOUNDS_VIOLATION = "BOUNDS_VIOLATION"


@dataclass(frozen=True)
class EdgeWitness:
    """One edge together with its colours."""
    vertices: Tuple[VertexRef, ...]
    colours: Tuple[int, ...]

    @property
    def distinct(self) -> int:
        return len(set(self.colours))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'vertices': [v.to_dict() for v in self.vertices],
            'colours': list(self.colours),
            'distinct': self.distinct,
        }


@dataclass(frozen=True)
class Verdict:
    """Result of check_fast or check_explicit."""
    status: VerdictStatus
    witness: Optional[EdgeWitness] = None
    degenerate: bool = False

    def __post_init__(self):
        if (self.witness is None) != (self.status is VerdictStatus.VALID):
            raise ValueError("a verdict carries a witness exactly when it is not VALID")

    @property
    def valid(self) -> bool:
        return self.status is VerdictStatus.VALID

    def to_dict(self) -> Dict[str, Any]:
        return {
            'status': self.status.value,
            'witness': self.witness.to_dict() if self.witness else None,
            'degenerate': self.degenerate,
        }


@dataclass(frozen=True)
class DistinctRange:
    """Fewest and most distinct colours over all edges; None when edgeless."""
    min_distinct: Optional[int]
    max_distinct: Optional[int]

    def to_dict(self) -> Dict[str, Optional[int]]:
        return {'min_distinct': self.min_distinct, 'max_distinct': self.max_distinct}


@dataclass(frozen=True)
class ClassProfile:
    """
    Per-class colour counts: counts[i, c-1] vertices of class i have colour c.

    Every question about which edges exist under a colouring is answered from
    this table alone, since vertices inside a class are interchangeable.
    """
    counts: np.ndarray

    @property
    def n(self) -> int:
        return int(self.counts.shape[0])

    @property
    def k(self) -> int:
        return int(self.counts.shape[1])

    @property
    def q(self) -> int:
        return int(self.counts[0].sum())

    @property
    def palette(self) -> Tuple[int, ...]:
        return tuple(int(c) + 1 for c in np.flatnonzero(self.counts.sum(axis=0)))

    def row(self, class_index: int) -> Dict[int, int]:
        return {int(c) + 1: int(self.counts[class_index, c])
                for c in np.flatnonzero(self.counts[class_index])}

    def to_dict(self) -> Dict[str, Any]:
        return {'counts': [{str(c): m for c, m in self.row(i).items()} for i in range(self.n)]}


class KStatus(Enum):
    """Three-valued answer for one k."""
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class VerdictSource(Enum):
    """Where a per-k answer came from."""
    CONSTRUCTION = "construction"
    WALK = "walk"
    SEARCH = "search"
    DEGENERATE = "degenerate"


@dataclass(frozen=True)
class KVerdict:
    """Answer to: is there a valid colouring with exactly k colours?"""
    k: int
    status: KStatus
    witness: Optional[Colouring] = None
    nodes_explored: int = 0
    budget_exhausted: bool = False
    source: VerdictSource = VerdictSource.SEARCH
    scheme: Optional[str] = None

    def __post_init__(self):
        if (self.witness is not None) != (self.status is KStatus.YES):
            raise ValueError("a k-verdict carries a witness exactly when it is YES")
        if self.witness is not None and self.witness.k != self.k:
            raise ValueError(f"witness uses {self.witness.k} colours, not {self.k}")

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'k': self.k,
            'status': self.status.value,
            'source': self.source.value,
            'nodes_explored': self.nodes_explored,
            'budget_exhausted': self.budget_exhausted,
        }
        if self.scheme:
            data['scheme'] = self.scheme
        if self.witness is not None:
            data['witness'] = self.witness.to_dict()
        return data


def runs_of(values: Sequence[int]) -> List[Tuple[int, int]]:
    """Collapse sorted integers into maximal runs of consecutive values."""
    runs: List[Tuple[int, int]] = []
    for v in values:
        if runs and v == runs[-1][1] + 1:
            runs[-1] = (runs[-1][0], v)
        else:
            runs.append((v, v))
    return runs


@dataclass
class SpectrumReport:
    """Per-k verdicts over [k_min, k_max] and everything derived from them."""
    instance: SigmaInstance
    bounds: ColourBounds
    verdicts: List[KVerdict]
    k_min: int
    k_max: int

    def verdict(self, k: int) -> Optional[KVerdict]:
        for v in self.verdicts:
            if v.k == k:
                return v
        return None

    @property
    def spectrum(self) -> List[int]:
        return [v.k for v in self.verdicts if v.status is KStatus.YES]

    @property
    def chi(self) -> Optional[int]:
        spectrum = self.spectrum
        return spectrum[0] if spectrum else None

    @property
    def chi_bar(self) -> Optional[int]:
        spectrum = self.spectrum
        return spectrum[-1] if spectrum else None

    @property
    def complete(self) -> bool:
        return all(v.status is not KStatus.UNKNOWN for v in self.verdicts)

    @property
    def gaps(self) -> List[Tuple[int, int]]:
        """Maximal NO runs with a YES immediately on both sides."""
        status = {v.k: v.status for v in self.verdicts}
        no_ks = [k for k, s in sorted(status.items()) if s is KStatus.NO]
        return [
            (lo, hi) for lo, hi in runs_of(no_ks)
            if status.get(lo - 1) is KStatus.YES and status.get(hi + 1) is KStatus.YES
        ]

    @property
    def total_nodes(self) -> int:
        return sum(v.nodes_explored for v in self.verdicts)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema': SchemaInfo.SCHEMA,
            'instance': self.instance.to_dict(),
            'bounds': self.bounds.to_dict(),
            'degenerate': self.instance.degenerate,
            'k_range': [self.k_min, self.k_max],
            'k_results': [v.to_dict() for v in self.verdicts],
            'spectrum': self.spectrum,
            'chi': self.chi,
            'chi_bar': self.chi_bar,
            'gaps': [list(g) for g in self.gaps],
            'complete': self.complete,
            'total_nodes': self.total_nodes,
        }


class SchemeId(Enum):
    """Explicit colouring schemes."""
    ZONE = "ZONE"
    BLOCK = "BLOCK"
    TWO_ZONE = "TWO_ZONE"
    SMALL_R4_K3 = "SMALL_R4_K3"
    SMALL_R5_K3 = "SMALL_R5_K3"
    SMALL_R5_K4 = "SMALL_R5_K4"
    TWO_TWO_LOW = "TWO_TWO_LOW"
    TWO_TWO_HIGH = "TWO_TWO_HIGH"


class WalkDirection(Enum):
    UP = "up"
    DOWN = "down"


class WalkRule(Enum):
    COLLAPSE = "collapse"
    MERGE = "merge"


class WalkTerminal(Enum):
    TARGET_REACHED = "TARGET_REACHED"
    NO_RULE_APPLIES = "NO_RULE_APPLIES"
    LIMIT = "LIMIT"


@dataclass(frozen=True)
class WalkStep:
    """One re-colouring step; colours are named in the labels before the step."""
    index: int
    rule: WalkRule
    class_index: int
    colours: Tuple[int, ...]
    k: int
    colouring: Colouring

    def to_dict(self) -> Dict[str, Any]:
        return {
            'step': self.index,
            'rule': self.rule.value,
            'class_index': self.class_index,
            'colours': list(self.colours),
            'k': self.k,
            'colouring': self.colouring.to_dict(),
        }


@dataclass
class WalkTrace:
    """Heuristic walk through the spectrum; failures are never NO evidence."""
    start: Colouring
    direction: WalkDirection
    target_k: int
    steps: List[WalkStep] = field(default_factory=list)
    terminal: WalkTerminal = WalkTerminal.NO_RULE_APPLIES

    @property
    def final(self) -> Colouring:
        return self.steps[-1].colouring if self.steps else self.start

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema': SchemaInfo.SCHEMA,
            'heuristic': True,
            'direction': self.direction.value,
            'start_k': self.start.k,
            'target_k': self.target_k,
            'steps': [s.to_dict() for s in self.steps],
            'terminal': self.terminal.value,
            'final_k': self.final.k,
        }

    def to_json_lines(self, header: Optional[Dict[str, Any]] = None) -> str:
        """Header object, one object per step, then the terminal object."""
        head = {'schema': SchemaInfo.SCHEMA, 'heuristic': True, 'direction': self.direction.value,
                'start_k': self.start.k, 'target_k': self.target_k}
        head.update(header or {})
        lines = [head] + [s.to_dict() for s in self.steps]
        lines.append({'terminal': self.terminal.value, 'final_k': self.final.k,
                      'final': self.final.to_dict()})
        return "\n".join(json.dumps(line, ensure_ascii=False) for line in lines)


class ClaimKind(Enum):
    COLOURABLE = "COLOURABLE"
    NOT_COLOURABLE = "NOT_COLOURABLE"
    NO_GAP = "NO_GAP"
    EMPTY_SPECTRUM = "EMPTY_SPECTRUM"


class ClaimStatus(Enum):
    CONFIRMED = "CONFIRMED"
    REFUTED = "REFUTED"
    UNDECIDED = "UNDECIDED"
    INACTIVE = "INACTIVE"


@dataclass(frozen=True)
class KSet:
    """The ks a claim talks about: an interval [lo, hi] or an explicit member list."""
    lo: Optional[int] = None
    hi: Optional[int] = None
    members: Tuple[int, ...] = ()

    @classmethod
    def interval(cls, lo: int, hi: int) -> 'KSet':
        return cls(lo=lo, hi=hi)

    @classmethod
    def of(cls, *members: int) -> 'KSet':
        return cls(members=tuple(sorted(set(members))))

    @property
    def empty(self) -> bool:
        if self.members:
            return False
        return self.lo is None or self.hi is None or self.lo > self.hi

    def values(self) -> List[int]:
        if self.members:
            return list(self.members)
        if self.empty:
            return []
        return list(range(self.lo, self.hi + 1))

    def __contains__(self, k: int) -> bool:
        if self.members:
            return k in self.members
        return not self.empty and self.lo <= k <= self.hi

    def label(self) -> str:
        if self.members:
            return "{" + ",".join(str(k) for k in self.members) + "}"
        if self.empty:
            return "{}"
        return f"[{self.lo},{self.hi}]"

    def to_dict(self) -> Dict[str, Any]:
        if self.members:
            return {'members': list(self.members)}
        return {'interval': [self.lo, self.hi]}


@dataclass(frozen=True)
class Claim:
    """A theorem's statement about one instance, with its hypotheses evaluated."""
    source: str
    kind: ClaimKind
    k_set: KSet
    preconditions: Tuple[Tuple[str, bool], ...]
    statement: str = ""

    @property
    def active(self) -> bool:
        return all(ok for _, ok in self.preconditions)

    @property
    def failed_preconditions(self) -> List[str]:
        return [name for name, ok in self.preconditions if not ok]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'source': self.source,
            'kind': self.kind.value,
            'k_set': self.k_set.to_dict(),
            'preconditions': [{'name': n, 'satisfied': ok} for n, ok in self.preconditions],
            'active': self.active,
            'statement': self.statement,
        }


@dataclass(frozen=True)
class ClaimResult:
    """A claim and what computation says about it."""
    claim: Claim
    status: ClaimStatus
    evidence: Tuple[int, ...] = ()
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data = self.claim.to_dict()
        data['status'] = self.status.value
        data['evidence_ks'] = list(self.evidence)
        data['detail'] = self.detail
        if self.status is ClaimStatus.INACTIVE:
            data['failed_preconditions'] = self.claim.failed_preconditions
        return data


@dataclass
class VerificationReport:
    """Claims about one instance checked against its computed spectrum."""
    instance: SigmaInstance
    bounds: ColourBounds
    results: List[ClaimResult]
    spectrum: SpectrumReport
    silent_range: Optional[KSet] = None

    @property
    def refuted(self) -> bool:
        return any(r.status is ClaimStatus.REFUTED for r in self.results)

    def count(self, status: ClaimStatus) -> int:
        return sum(1 for r in self.results if r.status is status)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'schema': SchemaInfo.SCHEMA,
            'instance': self.instance.to_dict(),
            'bounds': self.bounds.to_dict(),
            'claims': [r.to_dict() for r in self.results],
            'silent_range': self.silent_range.to_dict() if self.silent_range else None,
            'silent_label': "theorem-silent, computed only" if self.silent_range else None,
            'refuted': self.refuted,
            'spectrum': self.spectrum.to_dict(),
        }


@dataclass
class SweepReport:
    """Verification of every sigma of r at one (n, q)."""
    r: int
    n: int
    q: int
    bounds: ColourBounds
    min_delta: int
    reports: List[VerificationReport] = field(default_factory=list)

    @property
    def refuted(self) -> bool:
        return any(rep.refuted for rep in self.reports)

    def to_dict(self) -> Dict[str, Any]:
        rows = []
        for rep in self.reports:
            rows.append({
                'instance': rep.instance.to_dict(),
                'label': rep.instance.label(),
                'spectrum': rep.spectrum.spectrum,
                'gaps': [list(g) for g in rep.spectrum.gaps],
                'complete': rep.spectrum.complete,
                'claims': {s.value.lower(): rep.count(s) for s in ClaimStatus},
                'refuted': rep.refuted,
            })
        return {
            'schema': SchemaInfo.SCHEMA,
            'r': self.r,
            'n': self.n,
            'q': self.q,
            'bounds': self.bounds.to_dict(),
            'min_delta': self.min_delta,
            'instances': rows,
            'refuted': self.refuted,
        }


def serialize_model(obj: Any, indent: Optional[int] = None) -> str:
    """JSON text of a report or value type; plain dicts and lists pass through."""
    data = obj.to_dict() if hasattr(obj, 'to_dict') else obj
    return json.dumps(data, indent=indent, ensure_ascii=False)


def deserialize_model(json_str: str, model_class: type) -> Any:
    """Inverse of serialize_model for the input formats (instances, colourings)."""
    return model_class.from_dict(json.loads(json_str))
