"""Random testbeds, the Subset-Sum-Interval reduction, and instance files.

Random streams: every instance owns a ``numpy`` PCG64 generator seeded by
``SeedSequence([base_seed, kind_code, n_y, index])``. The sense is left out
of the key on purpose so the optimistic and pessimistic copies of an
instance share their numbers.
"""
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ParseError, RNotRepresentable, TooLarge
from .linalg import haar_orthogonal
from .model import LinBilevelInstance, QuadBilevelInstance, Sense
from .oracles import MAX_INT_DIM

FORMAT_VERSION = 1
Q_KINDS = ("diagonal", "cholesky_based", "bounded_eigenvalues")
FULL_N_Y = (10, 20)
FULL_PER = 50
DESK_PER = 5


@dataclass(frozen=True)
class GenConfig:
    seed: object = 0  # int or sequence of ints, fed to SeedSequence
    n_x: int = 10
    n_y: int = 10
    q_kind: str = "diagonal"
    m_x: int = 5
    sense: Sense = Sense.OPTIMISTIC

    def __post_init__(self):
        if self.n_x < 1 or self.n_y < 1:
            raise ValueError("n_x and n_y must be >= 1")
        if self.m_x < 0:
            raise ValueError("m_x must be >= 0")
        if self.q_kind not in Q_KINDS:
            raise ValueError(f"unknown q_kind {self.q_kind!r}")
        object.__setattr__(self, "sense", Sense(self.sense))


def rng_for(seed):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def _ints(rng, lo, hi, size):
    """Uniform integers in ``[lo, hi]`` as floats."""
    return rng.integers(lo, hi + 1, size=size).astype(float)


def make_q(rng, n, kind):
    if kind == "diagonal":
        return np.diag(_ints(rng, 1, 9, n)), None
    if kind == "cholesky_based":
        R = _ints(rng, -1, 1, (n, n))
        return R.T @ R + np.eye(n), None
    if kind == "bounded_eigenvalues":
        D = _ints(rng, 1, 9, n)
        U = haar_orthogonal(n, rng)
        Q = (U * D) @ U.T
        Q = np.round(0.5 * (Q + Q.T), 15)
        return Q, D
    raise ValueError(f"unknown q_kind {kind!r}")


def gen_quad(cfg: GenConfig, name=""):
    rng = rng_for(cfg.seed)
    n_x, n_y = cfg.n_x, cfg.n_y
    h_x = _ints(rng, -5, 5, n_x)
    d_x = _ints(rng, -5, 5, n_y)
    C_y = _ints(rng, -9, 9, (n_y, n_x))
    d_y = _ints(rng, -9, 9, n_y)
    A = _ints(rng, -1, 1, (cfg.m_x, n_x))
    x_bar = _ints(rng, 0, 1, n_x)
    b = A @ x_bar
    Q, eig = make_q(rng, n_y, cfg.q_kind)
    meta = {"q_kind": cfg.q_kind, "seed": _seed_repr(cfg.seed), "x_bar": x_bar.astype(int).tolist()}
    if eig is not None:
        meta["eigenvalues"] = eig.astype(int).tolist()
    return QuadBilevelInstance(h_x, d_x, A, b, Q, C_y, d_y, cfg.sense, 0.0, name, meta)


def _seed_repr(seed):
    return [int(s) for s in seed] if isinstance(seed, (list, tuple)) else int(seed)


def instance_id(q_kind, n_y, index, sense):
    return f"{q_kind}-ny{n_y}-{index:03d}-{Sense(sense).value[:3]}"


def gen_testbed(base_seed, per=FULL_PER, n_x=10, n_ys=FULL_N_Y, m_x=5):
    """``per`` instances for each (q_kind, n_y), each in both senses.

    Returns a list of ``QuadBilevelInstance`` ordered by kind, n_y, index,
    then optimistic before pessimistic.
    """
    out = []
    for code, kind in enumerate(Q_KINDS):
        for n_y in n_ys:
            for idx in range(per):
                cfg = GenConfig([int(base_seed), code, int(n_y), idx], n_x, n_y, kind, m_x)
                base = gen_quad(cfg)
                for sense in (Sense.OPTIMISTIC, Sense.PESSIMISTIC):
                    inst = base.with_sense(sense)
                    object.__setattr__(inst, "name", instance_id(kind, n_y, idx, sense))
                    out.append(inst)
    return out


def gen_lin(seed, n_x=4, n_y=3, m=2, coef=2, box=3):
    """Small linear-family instance whose follower is feasible for every binary ``x``.

    The right-hand side is built around an integer anchor point ``y0`` in
    the box so ``y0`` satisfies the follower system whatever ``x`` is.
    """
    rng = rng_for(seed)
    h_x = _ints(rng, -3, 3, n_x)
    d = _ints(rng, -coef, coef, n_y)
    A = _ints(rng, -1, 1, (2, n_x))
    x_bar = _ints(rng, 0, 1, n_x)
    b = A @ x_bar
    C_x = _ints(rng, -coef, coef, (m, n_x))
    D_y = _ints(rng, -coef, coef, (m, n_y))
    half = rng.integers(1, box + 1, size=n_y)
    y_lo, y_hi = -half.astype(float), half.astype(float)
    y0 = np.array([rng.integers(lo, hi + 1) for lo, hi in zip(y_lo, y_hi)], dtype=float)
    worst = np.clip(C_x, 0, None).sum(axis=1)  # max over binary x of C_x x
    slack = _ints(rng, 0, 2 * coef, m)
    b_y = -(worst + D_y @ y0 + slack)
    meta = {"seed": _seed_repr(seed), "anchor": y0.astype(int).tolist()}
    return LinBilevelInstance(h_x, d, A, b, C_x, b_y, D_y, y_lo, y_hi, Sense.OPTIMISTIC, 0.0,
                              f"lin-{_seed_repr(seed)}", meta)


# --------------------------------------------------------------------------
# Subset-Sum-Interval


@dataclass(frozen=True)
class SsiInstance:
    q: tuple
    R: int
    r: int
    M: int = field(init=False)

    def __post_init__(self):
        q = tuple(int(v) for v in self.q)
        object.__setattr__(self, "q", q)
        if not q or min(q) < 1 or self.R < 1 or self.r < 1:
            raise ValueError("q, R and r must be positive")
        if self.r > len(q):
            raise ValueError("need r <= k")
        # dominates every attainable value of the unpenalized terms
        object.__setattr__(self, "M", (self.B + self.Q + 2 ** self.r + 1) ** 2)

    @property
    def k(self):
        return len(self.q)

    @property
    def Q(self):
        return sum(self.q)

    @property
    def B(self):
        return self.R + 2 ** self.r - 1 + self.r * self.Q

    def subset_sums(self):
        sums = {0}
        for v in self.q:
            sums |= {s + v for s in sums}
        return sums

    def answer(self):
        """True when some ``S`` in ``[R, R + 2^r)`` is not a subset sum."""
        sums = self.subset_sums()
        return any(S not in sums for S in range(self.R, self.R + 2 ** self.r))


def ssi_layout(r, k):
    """Follower variable slices: y^p, y^d, y^o, y_s, z^p, z^d, z^o."""
    sizes = [("yp", r), ("yd", r), ("yo", k), ("ys", 1), ("zp", r), ("zd", r), ("zo", k)]
    out, pos = {}, 0
    for name, n in sizes:
        out[name] = slice(pos, pos + n)
        pos += n
    return out, pos


def reduce_ssi(ssi: SsiInstance):
    """Pessimistic quadratic bilevel instance encoding ``ssi``.

    Leader: ``x = (x^p, x^d)`` binary with ``sum x <= r``, minimizing the
    weighted sum ``a.y`` (without ``y_s``). Follower: minimize
    ``(a.y - B)^2 + M sum (x + y - z)^2 + M^2 sum (y^2 - y)`` over integers,
    the last term keeping every follower variable binary.
    """
    if ssi.R not in ssi.subset_sums():
        raise RNotRepresentable(f"R={ssi.R} is not a subset sum of {ssi.q}")
    r, k = ssi.r, ssi.k
    lay, n_y = ssi_layout(r, k)
    if n_y > MAX_INT_DIM:
        raise TooLarge(f"{n_y} follower variables > {MAX_INT_DIM}")
    Q, B, M = ssi.Q, ssi.B, ssi.M
    a = np.zeros(n_y)
    a[lay["yp"]] = [Q + 2 ** i for i in range(r)]
    a[lay["yd"]] = Q
    a[lay["yo"]] = ssi.q
    a[lay["ys"]] = 1
    H = np.outer(a, a) + M ** 2 * np.eye(n_y)
    n_x = 2 * r
    C = np.zeros((n_y, n_x))
    for grp, off in (("p", 0), ("d", r)):
        ys, zs = lay["y" + grp], lay["z" + grp]
        for i in range(r):
            iy, iz = ys.start + i, zs.start + i
            e = np.zeros(n_y)
            e[iy], e[iz] = 1.0, -1.0
            H += M * np.outer(e, e)
            C[iy, off + i] = 2 * M
            C[iz, off + i] = -2 * M
    Q_y = 2.0 * H
    d_y = -2.0 * B * a - M ** 2 * np.ones(n_y)
    d_x = a.copy()
    d_x[lay["ys"]] = 0.0
    meta = {"ssi": {"q": list(ssi.q), "R": ssi.R, "r": r, "M": M, "B": B}}
    return QuadBilevelInstance(np.zeros(n_x), d_x, np.ones((1, n_x)), np.array([float(r)]),
                               Q_y, C, d_y, Sense.PESSIMISTIC, 0.0, f"ssi-{ssi.q}-{ssi.R}-{r}",
                               meta)


def ssi_follower_objective(ssi, x, y):
    """The follower objective of :func:`reduce_ssi` written out term by term."""
    lay, n_y = ssi_layout(ssi.r, ssi.k)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    a = np.zeros(n_y)
    a[lay["yp"]] = [ssi.Q + 2 ** i for i in range(ssi.r)]
    a[lay["yd"]] = ssi.Q
    a[lay["yo"]] = ssi.q
    a[lay["ys"]] = 1
    val = (a @ y - ssi.B) ** 2 + ssi.M ** 2 * float(np.sum(y * y - y))
    r = ssi.r
    val += ssi.M * float(np.sum((x[:r] + y[lay["yp"]] - y[lay["zp"]]) ** 2))
    val += ssi.M * float(np.sum((x[r:] + y[lay["yd"]] - y[lay["zd"]]) ** 2))
    return val


# --------------------------------------------------------------------------
# instance files


_QUAD_FIELDS = ("h_x", "d_x", "A", "b", "Q_y", "C_y", "d_y")
_LIN_FIELDS = ("h_x", "d", "A", "b", "C_x", "b_y", "D_y", "y_lo", "y_hi")


def _num(v):
    v = float(v)
    return int(v) if v.is_integer() and abs(v) < 2 ** 53 else v


def _tolist(arr):
    arr = np.asarray(arr)
    if arr.ndim == 1:
        return [_num(v) for v in arr]
    return [[_num(v) for v in row] for row in arr]


def instance_to_dict(inst):
    if isinstance(inst, QuadBilevelInstance):
        family, fields = "quad", _QUAD_FIELDS
        dims = {"n_x": inst.n_x, "n_y": inst.n_y, "m_x": inst.m_x}
    elif isinstance(inst, LinBilevelInstance):
        family, fields = "lin", _LIN_FIELDS
        dims = {"n_x": inst.n_x, "n_y": inst.n_y, "m_x": inst.A.shape[0], "m_y": inst.m_y}
    else:
        raise TypeError(f"cannot serialize {type(inst).__name__}")
    doc = {"format_version": FORMAT_VERSION, "family": family, "name": inst.name,
           "sense": inst.sense.value, "dims": dims, "leader_const": _num(inst.leader_const)}
    for f in fields:
        doc[f] = _tolist(getattr(inst, f))
    doc["meta"] = inst.meta
    return doc


def dumps_instance(inst):
    """Deterministic text: one field per line, matrices row-major."""
    doc = instance_to_dict(inst)
    lines = ["{"]
    items = list(doc.items())
    for i, (k, v) in enumerate(items):
        sep = "," if i + 1 < len(items) else ""
        if isinstance(v, list) and v and isinstance(v[0], list):
            rows = ",\n    ".join(json.dumps(row) for row in v)
            lines.append(f"  {json.dumps(k)}: [\n    {rows}\n  ]{sep}")
        else:
            lines.append(f"  {json.dumps(k)}: {json.dumps(v, sort_keys=True)}{sep}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_instance(inst, path):
    path = Path(path)
    path.write_text(dumps_instance(inst), encoding="utf-8")
    return path


def _line_of(text, key):
    needle = f'"{key}"'
    for i, line in enumerate(text.splitlines(), 1):
        if line.lstrip().startswith(needle):
            return i
    return None


def loads_instance(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", line=1)

    def fail(key, msg):
        raise ParseError(msg, line=_line_of(text, key), field=key)

    if doc.get("format_version") != FORMAT_VERSION:
        fail("format_version", f"unsupported format_version {doc.get('format_version')!r}")
    family = doc.get("family")
    if family not in ("quad", "lin"):
        fail("family", f"unknown family {family!r}")
    fields = _QUAD_FIELDS if family == "quad" else _LIN_FIELDS
    sense = doc.get("sense")
    if sense not in [s.value for s in Sense]:
        fail("sense", f"unknown sense {sense!r}")
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        fail("meta", "meta must be an object")
    kind = meta.get("q_kind")
    if kind is not None and kind not in Q_KINDS:
        fail("meta", f"unknown q_kind tag {kind!r}")
    dims = doc.get("dims")
    if not isinstance(dims, dict) or not {"n_x", "n_y"} <= set(dims):
        fail("dims", "dims must give n_x and n_y")
    arrays = {}
    for f in fields:
        if f not in doc:
            fail(f, "missing field")
        try:
            arr = np.array(doc[f], dtype=float)
        except (TypeError, ValueError):
            fail(f, "entries must be numbers in a rectangular layout")
        if not np.all(np.isfinite(arr)):
            fail(f, "entries must be finite")
        arrays[f] = arr
    n_x, n_y = dims["n_x"], dims["n_y"]
    if arrays["h_x"].shape != (n_x,):
        fail("h_x", f"expected length {n_x}")
    lead = "d_x" if family == "quad" else "d"
    if arrays[lead].shape != (n_y,):
        fail(lead, f"expected length {n_y}")
    if arrays["A"].size == 0:
        arrays["A"] = arrays["A"].reshape(0, n_x)
    common = dict(sense=Sense(sense), leader_const=float(doc.get("leader_const", 0.0)),
                  name=str(doc.get("name", "")), meta=meta)
    try:
        if family == "quad":
            return QuadBilevelInstance(**{f: arrays[f] for f in fields}, **common)
        return LinBilevelInstance(**{f: arrays[f] for f in fields}, **common)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def read_instance(path):
    path = Path(path)
    return loads_instance(path.read_text(encoding="utf-8"))


# published quality figures, shown next to measured ones in reports
REFERENCE_QUALITY = {"delta_f_zero": 0.77, "delta_f_le_5": 0.91, "delta_f_ge_10": 0.025}


def example_tie(sense=Sense.OPTIMISTIC):
    """Leader ``100 (x - 1)^2 + y``, follower ``y^2 - x y``.

    The leader variable is restricted to ``{0, 1}`` (any other integer costs
    at least 100), where ``(x - 1)^2 = 1 - x``. At ``x = 1`` the follower is
    indifferent between ``y = 0`` and ``y = 1``.
    """
    return QuadBilevelInstance([-100.0], [1.0], np.zeros((0, 1)), [], [[2.0]], [[-1.0]], [0.0],
                               Sense(sense), 100.0, f"tie-{Sense(sense).value[:3]}")


def example_relaxation(shift):
    """Leader ``1000 x^2 + y``, follower ``(3y - shift)^2 + x y`` with ``x`` binary."""
    return QuadBilevelInstance([1000.0], [1.0], np.zeros((0, 1)), [], [[18.0]], [[1.0]],
                               [-6.0 * shift], Sense.OPTIMISTIC, 0.0, f"relax-{shift}")
