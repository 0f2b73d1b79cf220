"""Basin rendering: classify 2D slices of C^2 by first entry into L.

Each pixel seeds an orbit and is classified by the first step at which it
lands in the wedge L (approximating the absorbing basin as the union of
preimages of L under a finite iteration budget), by overflow, or as
undetermined within the budget.  The per-pixel computation is pure and
vectorized; rows are partitioned across workers into disjoint output
segments, so grids and emitted bytes are identical for any worker count.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import EXP_MAX, PlanePoint
from .domain import L_THRESHOLD

TAG_ENTERED = "entered"
TAG_OVERFLOWED = "overflowed"
TAG_NOT_ENTERED = "not_entered"

_CODE_NOT_ENTERED = 0
_CODE_ENTERED = 1
_CODE_OVERFLOWED = 2
_CODE_TO_TAG = {
    _CODE_NOT_ENTERED: TAG_NOT_ENTERED,
    _CODE_ENTERED: TAG_ENTERED,
    _CODE_OVERFLOWED: TAG_OVERFLOWED,
}


@dataclass(frozen=True)
class PixelClass:
    tag: str
    step: int | None = None


@dataclass(frozen=True)
class SliceSpec:
    """Affine 2D slice base + u*dir_u + v*dir_v with pixel centers at
    half-steps of the u/v ranges."""

    base: PlanePoint
    dir_u: PlanePoint
    dir_v: PlanePoint
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    width: int
    height: int

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("width and height must be >= 1")
        if self.dir_u.z == 0 and self.dir_u.w == 0:
            raise ValueError("dir_u must be nonzero")
        if self.dir_v.z == 0 and self.dir_v.w == 0:
            raise ValueError("dir_v must be nonzero")

    def param(self, i: int, j: int) -> tuple[float, float]:
        u0, u1 = self.u_range
        v0, v1 = self.v_range
        u = u0 + (i + 0.5) * (u1 - u0) / self.width
        v = v0 + (j + 0.5) * (v1 - v0) / self.height
        return u, v

    def pixel_center(self, i: int, j: int) -> PlanePoint:
        u, v = self.param(i, j)
        return PlanePoint(
            self.base.z + u * self.dir_u.z + v * self.dir_v.z,
            self.base.w + u * self.dir_u.w + v * self.dir_v.w,
        )


def _classify_arrays(
    z: np.ndarray, w: np.ndarray, budget: int, threshold: float
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized classifier over flat complex arrays.

    Returns (codes, steps); steps is -1 where no step applies.
    """
    codes = np.zeros(z.shape, dtype=np.uint8)
    steps = np.full(z.shape, -1, dtype=np.int32)
    active = np.ones(z.shape, dtype=bool)
    for k in range(budget + 1):
        zr = z.real
        wr = w.real
        inside = active & (zr > 1.0) & (wr > 1.0) & (wr - zr > threshold)
        codes[inside] = _CODE_ENTERED
        steps[inside] = k
        active &= ~inside
        if k == budget or not active.any():
            break
        az = z[active]
        aw = w[active]
        s = az + aw
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            z1 = np.exp(-s) + s
            w1 = np.exp(-2 * aw) + 2 * aw + 1
        bad = (
            ((-s).real > EXP_MAX)
            | ((-2 * aw).real > EXP_MAX)
            | ~np.isfinite(z1)
            | ~np.isfinite(w1)
        )
        idx = np.flatnonzero(active)
        over_idx = idx[bad]
        codes[over_idx] = _CODE_OVERFLOWED
        steps[over_idx] = k
        active[over_idx] = False
        keep = idx[~bad]
        z[keep] = z1[~bad]
        w[keep] = w1[~bad]
    return codes, steps


def classify_point(
    p: PlanePoint, budget: int, threshold: float = L_THRESHOLD
) -> PixelClass:
    """First entry into L within the budget: membership is checked at every
    step k = 0..budget; overflow at step k means the state after k steps
    was the last finite one."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    z = np.array([p.z], dtype=np.complex128)
    w = np.array([p.w], dtype=np.complex128)
    codes, steps = _classify_arrays(z, w, budget, threshold)
    code = int(codes[0])
    step = int(steps[0])
    return PixelClass(_CODE_TO_TAG[code], step if code != _CODE_NOT_ENTERED else None)


@dataclass(frozen=True)
class RasterResult:
    spec: SliceSpec
    budget: int
    threshold: float
    codes: np.ndarray = field(repr=False)  # (height, width) uint8
    steps: np.ndarray = field(repr=False)  # (height, width) int32, -1 = none

    def pixel(self, i: int, j: int) -> PixelClass:
        code = int(self.codes[j, i])
        step = int(self.steps[j, i])
        return PixelClass(_CODE_TO_TAG[code],
                          step if code != _CODE_NOT_ENTERED else None)

    @property
    def classes(self) -> list[PixelClass]:
        """Row-major list of per-pixel classifications."""
        return [
            self.pixel(i, j)
            for j in range(self.spec.height)
            for i in range(self.spec.width)
        ]

    @property
    def stats(self) -> dict[str, int]:
        flat = self.codes.ravel()
        return {
            TAG_ENTERED: int(np.count_nonzero(flat == _CODE_ENTERED)),
            TAG_OVERFLOWED: int(np.count_nonzero(flat == _CODE_OVERFLOWED)),
            TAG_NOT_ENTERED: int(np.count_nonzero(flat == _CODE_NOT_ENTERED)),
        }


def _pixel_grid(spec: SliceSpec) -> tuple[np.ndarray, np.ndarray]:
    u0, u1 = spec.u_range
    v0, v1 = spec.v_range
    i = np.arange(spec.width, dtype=np.float64)
    j = np.arange(spec.height, dtype=np.float64)
    u = u0 + (i + 0.5) * (u1 - u0) / spec.width
    v = v0 + (j + 0.5) * (v1 - v0) / spec.height
    uu, vv = np.meshgrid(u, v)  # shape (height, width)
    z = spec.base.z + uu * spec.dir_u.z + vv * spec.dir_v.z
    w = spec.base.w + uu * spec.dir_u.w + vv * spec.dir_v.w
    return z.astype(np.complex128), w.astype(np.complex128)


def render_slice(
    spec: SliceSpec,
    budget: int,
    threshold: float = L_THRESHOLD,
    workers: int = 1,
) -> RasterResult:
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    z, w = _pixel_grid(spec)
    codes = np.empty((spec.height, spec.width), dtype=np.uint8)
    steps = np.empty((spec.height, spec.width), dtype=np.int32)

    bounds = np.linspace(0, spec.height, min(workers, spec.height) + 1).astype(int)
    blocks = [(bounds[b], bounds[b + 1]) for b in range(len(bounds) - 1)
              if bounds[b] < bounds[b + 1]]

    def run_block(lo: int, hi: int) -> None:
        c, s = _classify_arrays(
            z[lo:hi].ravel().copy(), w[lo:hi].ravel().copy(), budget, threshold
        )
        codes[lo:hi] = c.reshape(hi - lo, spec.width)
        steps[lo:hi] = s.reshape(hi - lo, spec.width)

    if len(blocks) == 1:
        run_block(*blocks[0])
    else:
        with ThreadPoolExecutor(max_workers=len(blocks)) as pool:
            futures = [pool.submit(run_block, lo, hi) for lo, hi in blocks]
            for f in futures:
                f.result()
    return RasterResult(spec=spec, budget=budget, threshold=threshold,
                        codes=codes, steps=steps)


@dataclass(frozen=True)
class PaletteSpec:
    """Fully explicit tag -> RGB mapping; step-indexed colors cycle."""

    not_entered: tuple[int, int, int] = (0, 0, 0)
    entered_cycle: tuple[tuple[int, int, int], ...] = (
        (255, 255, 255), (66, 135, 245), (245, 197, 66), (66, 245, 149),
        (245, 66, 221), (170, 245, 66), (66, 221, 245), (245, 120, 66),
        (144, 66, 245), (245, 245, 66), (66, 245, 66), (245, 66, 120),
        (66, 96, 245), (192, 192, 192), (245, 170, 120), (120, 245, 218),
    )
    overflowed_cycle: tuple[tuple[int, int, int], ...] = tuple(
        (255 - 12 * k, 0, 0) for k in range(16)
    )

    def __post_init__(self) -> None:
        for rgb in (self.not_entered, *self.entered_cycle, *self.overflowed_cycle):
            if len(rgb) != 3 or any(not (0 <= v <= 255) for v in rgb):
                raise ValueError(f"bad RGB triple {rgb!r}")
        if not self.entered_cycle or not self.overflowed_cycle:
            raise ValueError("palette cycles must be nonempty")

    @classmethod
    def from_mapping(cls, data: dict) -> "PaletteSpec":
        def triple(x) -> tuple[int, int, int]:
            r, g, b = x
            return (int(r), int(g), int(b))

        kwargs = {}
        if "not_entered" in data:
            kwargs["not_entered"] = triple(data["not_entered"])
        if "entered_cycle" in data:
            kwargs["entered_cycle"] = tuple(triple(x) for x in data["entered_cycle"])
        if "overflowed_cycle" in data:
            kwargs["overflowed_cycle"] = tuple(
                triple(x) for x in data["overflowed_cycle"]
            )
        return cls(**kwargs)

    def color(self, pc: PixelClass) -> tuple[int, int, int]:
        if pc.tag == TAG_NOT_ENTERED:
            return self.not_entered
        if pc.tag == TAG_ENTERED:
            return self.entered_cycle[pc.step % len(self.entered_cycle)]
        return self.overflowed_cycle[pc.step % len(self.overflowed_cycle)]


def write_ppm(r: RasterResult, palette: PaletteSpec) -> bytes:
    """Binary P6 pixmap, row-major top-to-bottom, byte-exact for fixed input."""
    ent = np.array(palette.entered_cycle, dtype=np.uint8)
    ovf = np.array(palette.overflowed_cycle, dtype=np.uint8)
    img = np.empty((r.spec.height, r.spec.width, 3), dtype=np.uint8)
    img[...] = np.array(palette.not_entered, dtype=np.uint8)
    mask = r.codes == _CODE_ENTERED
    img[mask] = ent[r.steps[mask] % len(ent)]
    mask = r.codes == _CODE_OVERFLOWED
    img[mask] = ovf[r.steps[mask] % len(ovf)]
    header = f"P6\n{r.spec.width} {r.spec.height}\n255\n".encode("ascii")
    return header + img.tobytes()


def write_grid_csv(r: RasterResult) -> bytes:
    """CSV dump: i,j,re_z,im_z,re_w,im_w,tag,step (step empty if none)."""
    out = io.StringIO()
    out.write("i,j,re_z,im_z,re_w,im_w,tag,step\n")
    for j in range(r.spec.height):
        for i in range(r.spec.width):
            p = r.spec.pixel_center(i, j)
            pc = r.pixel(i, j)
            step = "" if pc.step is None else str(pc.step)
            out.write(
                f"{i},{j},{p.z.real!r},{p.z.imag!r},"
                f"{p.w.real!r},{p.w.imag!r},{pc.tag},{step}\n"
            )
    return out.getvalue().encode("ascii")
