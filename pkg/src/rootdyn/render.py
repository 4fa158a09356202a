"""Escape-time rendering of parameter planes and dynamical planes.

Pixels are classified with the exact same vectorized engine used for
single-seed classification, one image row at a time, so the result is
bit-identical regardless of how rows are distributed over threads.

Pixel (i, j) samples the point
    x = x_min + (x_max - x_min) (2 i + 1) / (2 W)
    y = y_max - (y_max - y_min) (2 j + 1) / (2 H)
(the cell center).  For a symmetric window with odd W the center column
is exactly x = 0, so real-axis structure lands on exact real samples.
"""

from __future__ import annotations

import csv
import math
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .operators import BehlParams, GeneralParams
from .orbits import (
    CIRCLE_SNAP,
    OUTCOME_NAMES,
    EscapeConfig,
    escape_orbits,
    step_behl,
    step_general,
)

GRID_MAGIC = b"RDYNGRID"
GRID_VERSION = 1

FLAG_DEGENERATE = 1
FLAG_CIRCLE = 2


@dataclass(frozen=True)
class Window:
    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("window must have positive extent")


@dataclass(frozen=True)
class GridSpec:
    width: int
    height: int

    def __post_init__(self):
        if self.width < 2 or self.height < 2:
            raise ValueError("grid must be at least 2x2")


@dataclass
class Palette:
    """Piecewise-linear RGB ramp over the normalized iteration count."""

    stops: list = field(default_factory=lambda: [
        (200, 220, 255), (0, 160, 60), (255, 220, 0), (200, 0, 0)])

    def rgb(self, t):
        """Interpolate the ramp at t in [0, 1] (vectorized)."""
        t = np.clip(np.asarray(t, float), 0.0, 1.0)
        s = np.asarray(self.stops, float)
        pos = t * (len(self.stops) - 1)
        i0 = np.minimum(pos.astype(int), len(self.stops) - 2)
        frac = (pos - i0)[..., None]
        return np.round(s[i0] * (1 - frac) + s[i0 + 1] * frac).astype(np.uint8)


@dataclass
class PlaneGrid:
    """Classified escape grid with its geometry and iteration budget."""

    window: Window
    outcome: np.ndarray  # uint8 (H, W)
    iterations: np.ndarray  # uint16 (H, W)
    flags: np.ndarray  # uint8 (H, W)
    max_iter: int

    @property
    def shape(self):
        return self.outcome.shape


def pixel_centers(window: Window, grid: GridSpec):
    """Complex sample points, shape (H, W); row 0 is the top of the window."""
    w, h = grid.width, grid.height
    xs = window.x_min + (window.x_max - window.x_min) * (2 * np.arange(w) + 1) / (2 * w)
    ys = window.y_max - (window.y_max - window.y_min) * (2 * np.arange(h) + 1) / (2 * h)
    return xs[None, :] + 1j * ys[:, None]


def _free_critical_general(a, n, k):
    """Vectorized c_+ of the general family; nan where it does not exist."""
    with np.errstate(all="ignore"):
        s = np.sqrt((a * a - 1) * ((n - k) ** 2 * a * a - (n + k) ** 2) + 0j)
        cp = ((n + k) + (n - k) * a * a + s) / (2 * n * a)
    return np.where(a == 0, np.nan + 0j, cp)


def _free_critical_behl(b):
    """Vectorized c_+ of the raw-parameter family; nan where undefined."""
    with np.errstate(all="ignore"):
        num = -51 - 42 * b - 4 * b ** 2 + 2 * b ** 3 - b ** 4
        rad = ((b - 3) * (b + 1) * (b + 2) * (b * b - 2 * b - 7)
               * (b * b + 14 * b + 9))
        den = (b - 1) * (b + 3) * (b * b - 6 * b - 11)
        cp = (num + 2 * np.sqrt(rad + 0j)) / den
    return np.where(den == 0, np.nan + 0j, cp)


def _classify_rows(step_of, seeds, degen, circ, cfg, row_lo, row_hi):
    out = np.empty((row_hi - row_lo,) + seeds.shape[1:], np.uint8)
    its = np.empty_like(out, dtype=np.int32)
    for j in range(row_lo, row_hi):
        o, it, _, _ = escape_orbits(step_of(j), seeds[j], cfg, on_circle=circ[j])
        o[degen[j]] = 0
        it[degen[j]] = 0
        out[j - row_lo] = o
        its[j - row_lo] = it
    return out, its


def _run_grid(step_of, seeds, degen, circ, cfg, threads):
    h = seeds.shape[0]
    outcome = np.empty(seeds.shape, np.uint8)
    iters = np.empty(seeds.shape, np.int32)
    threads = max(1, int(threads))
    if threads == 1:
        outcome[:], iters[:] = _classify_rows(step_of, seeds, degen, circ, cfg, 0, h)
    else:
        bounds = np.linspace(0, h, threads + 1).astype(int)
        with ThreadPoolExecutor(threads) as pool:
            jobs = [(lo, hi, pool.submit(_classify_rows, step_of, seeds,
                                         degen, circ, cfg, lo, hi))
                    for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        for lo, hi, job in jobs:
            o, it = job.result()
            outcome[lo:hi] = o
            iters[lo:hi] = it
    flags = (degen * FLAG_DEGENERATE | circ * FLAG_CIRCLE).astype(np.uint8)
    return outcome, np.minimum(iters, 65535).astype(np.uint16), flags


def render_parameter_plane(family, window: Window, grid: GridSpec,
                           cfg: EscapeConfig | None = None, threads: int = 1,
                           nk=(4, 1)) -> PlaneGrid:
    """Escape-time parameter plane of the free critical orbit.

    family is 'general' (a plane, with nk = (n, k)) or 'behl' (b plane).
    Degenerate parameter pixels are left undecided and flagged.
    """
    if cfg is None:
        cfg = EscapeConfig()
    par = pixel_centers(window, grid)
    if family == "general":
        n, k = nk
        seeds = _free_critical_general(par, n, k)
        degen = (par == 0) | (par == 1) | (par == -1)
        step_of = lambda j: (lambda z, idx, row=j:
                             step_general(z, par[row][idx], n, k))
    elif family == "behl":
        seeds = _free_critical_behl(par)
        A = par * par - 6 * par - 11
        B = par * par + 2 * par - 3
        degen = (B == 0) | (par == -1) | (par * par - 2 * par - 7 == 0) | (A == 0)
        step_of = lambda j: (lambda z, idx, row=j: step_behl(z, par[row][idx]))
    else:
        raise ValueError("family must be 'general' or 'behl'")
    degen = degen | ~np.isfinite(seeds)
    seeds = np.where(degen, 1.0 + 0j, seeds)
    circ = (par.imag == 0) & (np.abs(np.abs(seeds) - 1.0) < CIRCLE_SNAP) & ~degen
    outcome, iters, flags = _run_grid(step_of, seeds, degen, circ, cfg, threads)
    return PlaneGrid(window, outcome, iters, flags, cfg.max_iter)


def render_dynamical_plane(p, window: Window, grid: GridSpec,
                           cfg: EscapeConfig | None = None,
                           threads: int = 1) -> PlaneGrid:
    """Escape-time dynamical plane: every pixel center is an orbit seed."""
    if cfg is None:
        cfg = EscapeConfig()
    seeds = pixel_centers(window, grid)
    if isinstance(p, GeneralParams):
        real_par = p.a.imag == 0
        step = lambda z: step_general(z, p.a, p.n, p.k)
    elif isinstance(p, BehlParams):
        real_par = p.b.imag == 0
        step = lambda z: step_behl(z, p.b)
    else:
        raise TypeError("p must be GeneralParams or BehlParams")
    degen = np.full(seeds.shape, p.degenerate, bool)
    circ = np.abs(np.abs(seeds) - 1.0) < CIRCLE_SNAP if real_par else \
        np.zeros(seeds.shape, bool)
    circ &= ~degen
    wrapped = lambda z, idx: step(z)
    outcome, iters, flags = _run_grid(lambda j: wrapped, seeds, degen, circ,
                                      cfg, threads)
    return PlaneGrid(window, outcome, iters, flags, cfg.max_iter)


def colorize(plane: PlaneGrid, mode="parameter", palette: Palette | None = None):
    """RGB uint8 image (H, W, 3) from a classified grid.

    Parameter mode maps the normalized escape iteration through the
    palette ramp for decided pixels and paints undecided pixels black.
    Dynamical mode uses a blue ramp for orbits captured by zero and a
    red ramp for orbits captured by infinity.
    """
    if palette is None:
        palette = Palette()
    h, w = plane.shape
    t = (plane.iterations.astype(float) - 1) / max(plane.max_iter - 1, 1)
    t = np.clip(t, 0.0, 1.0)
    img = np.zeros((h, w, 3), np.uint8)
    decided = plane.outcome != 0
    if mode == "parameter":
        img[decided] = palette.rgb(t[decided])
    elif mode == "dynamical":
        shade = np.round(255 * (1 - 0.8 * t)).astype(np.uint8)
        z = plane.outcome == 1
        img[z, 2] = shade[z]
        img[z, 0] = img[z, 1] = (shade[z] * 0.25).astype(np.uint8)
        i = plane.outcome == 2
        img[i, 0] = shade[i]
        img[i, 1] = img[i, 2] = (shade[i] * 0.25).astype(np.uint8)
        s = plane.outcome == 3
        img[s] = (60, 200, 60)
    else:
        raise ValueError("mode must be 'parameter' or 'dynamical'")
    return img


def write_image(img, path):
    """Write an (H, W, 3) uint8 image as binary PPM or PNG by extension."""
    path = str(path)
    img = np.ascontiguousarray(img, dtype=np.uint8)
    if path.endswith(".ppm"):
        h, w, _ = img.shape
        with open(path, "wb") as fh:
            fh.write(b"P6\n%d %d\n255\n" % (w, h))
            fh.write(img.tobytes())
    elif path.endswith(".png"):
        from PIL import Image
        Image.fromarray(img, "RGB").save(path)
    else:
        raise ValueError("unsupported image extension (use .ppm or .png)")


def read_image_ppm(path):
    with open(path, "rb") as fh:
        data = fh.read()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6":
        raise ValueError("not a binary PPM file")
    w, h = map(int, parts[1].split())
    return np.frombuffer(parts[3], np.uint8).reshape(h, w, 3).copy()


_HEADER = struct.Struct("<8sB3x4dIII")


def write_grid(plane: PlaneGrid, path):
    """Serialize a classified grid (portable little-endian layout).

    Header: magic, version byte, 3 pad bytes, the 4 window float64s,
    width, height, max_iter (uint32).  Then one 4-byte record per cell
    in row-major order: outcome uint8, flags uint8, iterations uint16.
    """
    h, w = plane.shape
    win = plane.window
    cells = np.empty((h, w, 4), np.uint8)
    cells[..., 0] = plane.outcome
    cells[..., 1] = plane.flags
    cells[..., 2:] = plane.iterations.astype("<u2").view(np.uint8).reshape(h, w, 2)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(GRID_MAGIC, GRID_VERSION, win.x_min, win.x_max,
                              win.y_min, win.y_max, w, h, plane.max_iter))
        fh.write(cells.tobytes())


def read_grid(path) -> PlaneGrid:
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        magic, ver, x0, x1, y0, y1, w, h, max_iter = _HEADER.unpack(head)
        if magic != GRID_MAGIC:
            raise ValueError("not a grid file (bad magic)")
        if ver != GRID_VERSION:
            raise ValueError("unsupported grid version %d" % ver)
        cells = np.frombuffer(fh.read(4 * w * h), np.uint8).reshape(h, w, 4)
    return PlaneGrid(
        Window(x0, x1, y0, y1),
        cells[..., 0].copy(),
        cells[..., 2:].reshape(h, w, 2).copy().view("<u2")[..., 0],
        cells[..., 1].copy(),
        max_iter,
    )


def classification_summary(plane: PlaneGrid):
    """Outcome counts and fractions as a list of dict rows."""
    total = plane.outcome.size
    rows = []
    for code, name in sorted(OUTCOME_NAMES.items()):
        cnt = int(np.count_nonzero(plane.outcome == code))
        rows.append({"outcome": name, "count": cnt, "fraction": cnt / total})
    rows.append({"outcome": "flagged", "count":
                 int(np.count_nonzero(plane.flags & FLAG_DEGENERATE)),
                 "fraction": float(np.count_nonzero(plane.flags & FLAG_DEGENERATE)) / total})
    return rows


def summary_to_csv(plane: PlaneGrid, path):
    rows = classification_summary(plane)
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=["outcome", "count", "fraction"])
        w.writeheader()
        w.writerows(rows)
    return rows
