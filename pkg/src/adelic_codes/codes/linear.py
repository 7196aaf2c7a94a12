"""Linear codes over F_q with a block structure of r symbols per evaluation point."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import kernels, linalg
from ..gf import Field, field_create

DEFAULT_BUDGET = 10 ** 7


@dataclass
class LinearCode:
    """Generator matrix G (k x l, full row rank) with l = r * n, point-major and component-minor."""

    F: Field
    G: np.ndarray
    r: int = 1
    label: str = ""
    sections: list | None = field(default=None, repr=False)
    design_lower: int | None = None

    def __post_init__(self):
        self.G = linalg.as_array(self.G)
        if self.G.ndim != 2:
            self.G = self.G.reshape(0, 0)
        if self.length % self.r:
            raise ValueError("length is not a multiple of the block size")
        if self.k and linalg.rank(self.F, self.G) != self.k:
            raise ValueError("generator matrix is not of full row rank")

    @property
    def k(self) -> int:
        return self.G.shape[0]

    @property
    def length(self) -> int:
        return self.G.shape[1]

    @property
    def n(self) -> int:
        return self.length // self.r

    def same_space(self, other: "LinearCode") -> bool:
        return self.length == other.length and linalg.rowspace_equal(self.F, self.G, other.G)

    def format_matrix(self) -> str:
        """Plain-text export: header ``q k l r n``, then k rows of element indices."""
        lines = [f"{self.F.q} {self.k} {self.length} {self.r} {self.n}"]
        lines += [" ".join(str(int(a)) for a in row) for row in self.G]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"LinearCode([{self.length},{self.k}] over GF({self.F.q}), r={self.r}{', ' + self.label if self.label else ''})"


def parse_matrix(text: str, F: Field | None = None) -> LinearCode:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    q, k, length, r, n = (int(t) for t in lines[0].split())
    if length != r * n:
        raise ValueError("header has l != r * n")
    if F is None:
        F = _field_of_order(q)
    elif F.q != q:
        raise ValueError("field order mismatch")
    rows = [[int(t) for t in ln.split()] for ln in lines[1:1 + k]]
    if len(rows) != k or any(len(row) != length for row in rows):
        raise ValueError("matrix body does not match the header")
    return LinearCode(F, linalg.as_array(rows, length), r)


def _field_of_order(q: int) -> Field:
    for p in range(2, q + 1):
        e, m = 0, q
        while m % p == 0:
            m //= p
            e += 1
        if m == 1 and e:
            return field_create(p, e)
    raise ValueError(f"{q} is not a prime power")


def encode(C: LinearCode, message) -> np.ndarray:
    message = list(message)
    if len(message) != C.k:
        raise ValueError(f"message has length {len(message)}, expected {C.k}")
    if C.k == 0:
        return np.zeros(C.length, dtype=np.int64)
    return linalg.matmul(C.F, [message], C.G)[0]


def dual_code(C: LinearCode) -> LinearCode:
    """Orthogonal complement under sum_i a_i b_i."""
    if C.k == 0:
        return LinearCode(C.F, np.eye(C.length, dtype=np.int64), C.r, f"dual({C.label})")
    return LinearCode(C.F, linalg.nullspace(C.F, C.G), C.r, f"dual({C.label})")


@dataclass
class DecodeResult:
    ok: bool
    message: np.ndarray | None = None
    reason: str = ""


def erasure_decode(C: LinearCode, word, erased) -> DecodeResult:
    """Recover the message from the non-erased coordinates, if they determine it uniquely."""
    erased = set(int(i) for i in erased)
    keep = [i for i in range(C.length) if i not in erased]
    word = np.asarray(word, dtype=np.int64)
    if C.k == 0:
        return DecodeResult(True, np.zeros(0, dtype=np.int64))
    sub = C.G[:, keep]
    if linalg.rank(C.F, sub) < C.k:
        return DecodeResult(False, None, "erasures cover the support of a nonzero codeword")
    x = linalg.solve_left(C.F, sub, word[keep])
    if x is None:
        return DecodeResult(False, None, "word is not consistent with any codeword")
    return DecodeResult(True, x)


@dataclass
class Distance:
    """Minimum distance in the symbol metric (over F_q) and the block metric (over F_q^r).

    When exact is False the values are intervals (lower, upper).
    """

    exact: bool
    symbol: int | tuple | None
    block: int | tuple | None
    symbol_witness: np.ndarray | None = None
    block_witness: np.ndarray | None = None
    enumerated: int = 0

    @property
    def symbol_lower(self):
        return self.symbol if self.exact else self.symbol[0]

    @property
    def symbol_upper(self):
        return self.symbol if self.exact else self.symbol[1]

    def format(self, which="symbol") -> str:
        v = getattr(self, which)
        if v is None:
            return "none"
        if self.exact:
            return str(v)
        return f"[{v[0]},{v[1]}]"


def min_distance(C: LinearCode, budget: int = DEFAULT_BUDGET, seed: int = 0, samples: int = 20000) -> Distance:
    """Exact minimum distance by enumeration when q^k <= budget, else a bracketing interval."""
    q, k = C.F.q, C.k
    if k == 0:
        return Distance(True, None, None)
    add, mul, _, _ = C.F.tables
    if q ** k <= budget:
        ws, wit_s, wb, wit_b = kernels.min_weight(C.G, C.r, add, mul)
        return Distance(True, ws, wb, wit_s, wit_b, (q ** k - 1) // (q - 1))
    rng = np.random.default_rng(seed)
    msgs = rng.integers(0, q, size=(samples, k), dtype=np.int64)
    msgs = msgs[msgs.any(axis=1)]
    cw = np.zeros((msgs.shape[0], C.length), dtype=np.int64)
    for i in range(k):
        cw = add[cw, mul[msgs[:, i][:, None], C.G[i][None, :]]]
    nz = cw != 0
    ws = nz.sum(axis=1)
    wb = nz.reshape(-1, C.n, C.r).any(axis=2).sum(axis=1)
    i_s, i_b = int(np.argmin(ws)), int(np.argmin(wb))
    best_s, wit_s = int(ws[i_s]), msgs[i_s]
    best_b, wit_b = int(wb[i_b]), msgs[i_b]
    # the design bound counts points where a nonzero component vanishes, so it bounds both metrics
    lower = max(1, C.design_lower or 1)
    return Distance(False, (min(lower, best_s), best_s), (min(lower, best_b), best_b), wit_s, wit_b, samples)
