"""Instance generation: uniform random point sets, star point sets whose
MST is a forced high-degree star, and the special-instance layout that
plants stars inside blocked-out subgrids of the sampling grid.

All generation is deterministic given (config, seed).  Star geometry works
in degrees to match the angle conventions of the underlying construction.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .geometry import check_points, distance
from .mst import minimum_spanning_tree

DEFAULT_GRID = 10000.0
# Smallest longest-star-edge the special layout will plant, as a grid fraction.
STAR_EDGE_FLOOR_FRACTION = 1.0 / 100.0
# Stars are kept below a quarter of their subgrid side: every outside point is
# then at least side/4 away from every star point, which is strictly longer
# than any star edge, so Kruskal assembles the star before anything touches it.
STAR_EDGE_SUBGRID_FRACTION = 0.25
SUBGRID_MAX_FRACTION = 1.0 / 8.0
PLACEMENT_RETRIES = 200


class GenerationError(RuntimeError):
    """Raised when the special-instance layout cannot be placed; the caller
    is expected to retry with a fresh seed."""


@dataclass(frozen=True)
class StarSpec:
    """Angles and radial distances describing a star during generation.

    ``angles[i]`` is the angle (degrees) between arm i and arm i+1 in
    circular order; ``radii[i]`` is the distance of radial point i from
    the centre.
    """

    d: int
    angles: tuple[float, ...]
    radii: tuple[float, ...]
    center: tuple[float, float] = (0.0, 0.0)
    orientation: float = 0.0

    def validate(self) -> None:
        if self.d not in (4, 5):
            raise ValueError(f"star degree must be 4 or 5, got {self.d}")
        if len(self.angles) != self.d or len(self.radii) != self.d:
            raise ValueError("angle/radius lists must have length d")
        if abs(sum(self.angles) - 360.0) > 1e-9:
            raise ValueError(f"angles sum to {sum(self.angles)}, expected 360")
        if min(self.angles) < 60.0 - 1e-12:
            raise ValueError("every star angle must be at least 60 degrees")
        if min(self.radii) <= 0.0:
            raise ValueError("radii must be positive")
        pts = star_points(self)
        for i in range(1, self.d + 1):
            j = i % self.d + 1
            if distance(pts[i], pts[j]) < max(self.radii[i - 1], self.radii[j - 1]) - 1e-9:
                raise ValueError(f"adjacent arms {i},{j} violate the star condition")


def star_points(spec: StarSpec) -> np.ndarray:
    """Points of a star: centre first, then the radial points in order."""
    cx, cy = spec.center
    pts = [(cx, cy)]
    angle = spec.orientation
    for i in range(spec.d):
        rad = math.radians(angle)
        pts.append((cx + spec.radii[i] * math.cos(rad), cy + spec.radii[i] * math.sin(rad)))
        angle += spec.angles[i]
    return np.array(pts, dtype=float)


def allowable_range(theta_prev: float, theta_next: float, d_prev: float, d_next: float) -> tuple[float, float]:
    """Interval of radii a radial point may take without breaking the star.

    Each neighbouring arm contributes a one-sided constraint: for an angle
    below 90 degrees the radius ratio to that neighbour must stay within
    [2 cos(theta), 1 / (2 cos(theta))]; at 90 degrees or more the opposite
    side of the triangle is automatically longest, so the constraint is all
    of R+.  The result is the intersection of both sides, never empty for a
    valid star.
    """
    if min(theta_prev, theta_next) < 60.0 - 1e-12:
        raise ValueError("star angles must be at least 60 degrees")
    if d_prev <= 0 or d_next <= 0:
        raise ValueError("neighbour radii must be positive")
    lo, hi = 0.0, math.inf
    for theta, d in ((theta_prev, d_prev), (theta_next, d_next)):
        if theta < 90.0:
            c = 2.0 * math.cos(math.radians(theta))
            lo = max(lo, c * d)
            hi = min(hi, d / c)
    if lo > hi:
        if lo > hi * (1 + 1e-12):
            raise ValueError("empty allowable range: inconsistent star description")
        hi = lo  # clamp float noise on a degenerate (single-point) range
    return lo, hi


def _random_angles(d: int, rng: np.random.Generator) -> tuple[float, ...]:
    slack = 360.0 - 60.0 * d
    parts = rng.dirichlet(np.ones(d)) * slack
    angles = 60.0 + parts
    angles[-1] = 360.0 - float(angles[:-1].sum())
    return tuple(float(a) for a in angles)


def generate_star_spec(d: int, length: float, rng: np.random.Generator) -> StarSpec:
    """Run the four-stage star construction and return its description.

    Stages: random angle allocation (each >= 60 degrees, summing to 360),
    d - 2 rounds of augmentation moving each radial point in clockwise
    order to a uniform position inside its allowable range, scaling so the
    longest radius equals ``length``, and a uniform random rotation.
    """
    if d not in (4, 5):
        raise ValueError(f"star degree must be 4 or 5, got {d}")
    if length <= 0:
        raise ValueError("star edge length must be positive")
    angles = _random_angles(d, rng)
    radii = [1.0] * d
    for _ in range(d - 2):
        for i in range(d):
            lo, hi = allowable_range(
                angles[(i - 1) % d], angles[i], radii[(i - 1) % d], radii[(i + 1) % d]
            )
            if not math.isfinite(hi):
                hi = 4.0 * max(radii)
            lo = min(max(lo, 1e-9 * max(radii)), hi)
            radii[i] = float(rng.uniform(lo, hi))
    scale = length / max(radii)
    radii = [r * scale for r in radii]
    orientation = float(rng.uniform(0.0, 360.0))
    spec = StarSpec(d=d, angles=angles, radii=tuple(radii), orientation=orientation)
    spec.validate()
    return spec


def generate_star(d: int, length: float, rng: np.random.Generator) -> np.ndarray:
    """Random star points (centre first) whose MST is the star S_d with
    longest edge ``length``; verified against the tie-broken MST."""
    spec = generate_star_spec(d, length, rng)
    pts = star_points(spec)
    _assert_star_mst(pts, d)
    return pts


def _assert_star_mst(pts: np.ndarray, d: int) -> None:
    res = minimum_spanning_tree(pts)
    expected = tuple((0, i) for i in range(1, d + 1))
    if res.tree.edges != expected:
        raise GenerationError("constructed points do not induce the star MST")


# -- instances -------------------------------------------------------------


@dataclass(frozen=True)
class GenConfig:
    """Knobs for instance generation on a square grid.

    ``star_edge_cap`` bounds the longest star edge as a fraction of its
    subgrid side.  The default 0.25 makes the induced-star property a
    certainty; larger caps (< 0.5) stay within the layout contract but
    lean on the final MST verification and its retries.
    """

    n: int
    grid: float = DEFAULT_GRID
    seed: int | None = None
    star_edge_cap: float = STAR_EDGE_SUBGRID_FRACTION

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("instances need n >= 2")
        if self.grid <= 0:
            raise ValueError("grid side must be positive")
        if not 0 < self.star_edge_cap < 0.5:
            raise ValueError("star edge cap must be a fraction in (0, 0.5)")


@dataclass(frozen=True)
class Instance:
    """A problem instance: distinct planar points plus provenance."""

    id: str
    points: np.ndarray
    kind: str = "uniform"
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", check_points(self.points))
        self.points.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.points.shape[0])


def generate_uniform(cfg: GenConfig, rng: np.random.Generator | None = None) -> Instance:
    """n distinct integer-coordinate points drawn uniformly from the grid."""
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    grid = int(cfg.grid)
    if cfg.n > (grid + 1) ** 2:
        raise ValueError("grid too small for distinct points")
    seen: set[tuple[float, float]] = set()
    pts: list[tuple[float, float]] = []
    while len(pts) < cfg.n:
        x, y = rng.integers(0, grid + 1, size=2)
        p = (float(x), float(y))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return Instance(
        id=f"uniform-n{cfg.n}-s{cfg.seed}",
        points=np.array(pts),
        kind="uniform",
        seed=cfg.seed,
    )


def star_counts(n: int) -> tuple[int, int]:
    """Number of S4 / S5 stars planted in a special instance (round half up)."""

    def round_half_up(x: float) -> int:
        return int(math.floor(x + 0.5))

    return round_half_up(0.10 * n), round_half_up(0.05 * n)


def _squares_overlap(a, b) -> bool:
    ax, ay, asz = a
    bx, by, bsz = b
    return not (ax + asz <= bx or bx + bsz <= ax or ay + asz <= by or by + bsz <= ay)


def _inside_square(p, sq) -> bool:
    x, y = p
    sx, sy, s = sq
    return sx <= x <= sx + s and sy <= y <= sy + s


def generate_special(cfg: GenConfig, rng: np.random.Generator | None = None) -> Instance:
    """Instance with planted S4/S5 stars inside disjoint blocked subgrids.

    10% of the points become S4 centres and 5% S5 centres (round half up);
    each star lives in its own empty square subgrid with longest edge
    strictly below ``star_edge_cap`` of the subgrid side, remaining points
    fill the unblocked space uniformly.  The tie-broken MST of the result
    contains every star as an induced subtree, which is verified before
    returning.
    """
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    n = cfg.n
    if n < 11:
        raise ValueError("special instances need n >= 11")
    n4, n5 = star_counts(n)
    star_points_total = 5 * n4 + 6 * n5
    if star_points_total > n:
        raise ValueError(
            f"star proportions need {star_points_total} points but n={n}"
        )
    grid = float(cfg.grid)
    edge_floor = grid * STAR_EDGE_FLOOR_FRACTION
    side_min = edge_floor / cfg.star_edge_cap * 1.05
    side_max = max(grid * SUBGRID_MAX_FRACTION, side_min)
    if side_max > grid:
        raise ValueError("grid too small for star subgrids")

    blocked: list[tuple[float, float, float]] = []
    all_points: list[np.ndarray] = []
    star_degrees = [4] * n4 + [5] * n5
    for d in star_degrees:
        placed = False
        for _ in range(PLACEMENT_RETRIES):
            side = float(rng.uniform(side_min, side_max))
            x0 = float(rng.uniform(0.0, grid - side))
            y0 = float(rng.uniform(0.0, grid - side))
            sq = (x0, y0, side)
            if any(_squares_overlap(sq, b) for b in blocked):
                continue
            length = float(rng.uniform(edge_floor, side * cfg.star_edge_cap * 0.999))
            star = generate_star(d, length, rng)
            star[:, 0] += x0 + side / 2.0
            star[:, 1] += y0 + side / 2.0
            blocked.append(sq)
            all_points.append(star)
            placed = True
            break
        if not placed:
            raise GenerationError(
                f"could not place a size-{d} star after {PLACEMENT_RETRIES} tries"
            )

    free_needed = n - star_points_total
    seen = {tuple(p) for chunk in all_points for p in chunk}
    free: list[tuple[float, float]] = []
    attempts = 0
    while len(free) < free_needed:
        attempts += 1
        if attempts > 1000 * max(free_needed, 1):
            raise GenerationError("could not place free points outside blocked space")
        x, y = rng.integers(0, int(grid) + 1, size=2)
        p = (float(x), float(y))
        if p in seen or any(_inside_square(p, sq) for sq in blocked):
            continue
        seen.add(p)
        free.append(p)
    if free:
        all_points.append(np.array(free))
    points = np.vstack(all_points)

    _verify_induced_stars(points, star_degrees)
    return Instance(
        id=f"special-n{n}-s{cfg.seed}", points=points, kind="special", seed=cfg.seed
    )


def _verify_induced_stars(points: np.ndarray, star_degrees: list[int]) -> None:
    tree = minimum_spanning_tree(points).tree
    offset = 0
    for d in star_degrees:
        center = offset
        for arm in range(offset + 1, offset + d + 1):
            if not tree.has_edge(center, arm):
                raise GenerationError("planted star is not induced in the MST")
        if int(tree.degree[center]) != d:
            raise GenerationError("planted star centre has extra MST edges")
        offset += d + 1


def filter_degree4(instances: Iterable[Instance]) -> list[Instance]:
    """Keep instances whose tie-broken MST has a vertex of degree >= 4."""
    return [
        inst
        for inst in instances
        if minimum_spanning_tree(inst.points).max_degree >= 4
    ]


# -- instance files ---------------------------------------------------------

_HEADER_RE = re.compile(
    r"^# dmst-instance v1 n=(\d+) seed=(\S+) kind=(uniform|special)$"
)


def write_instance(instance: Instance, path) -> None:
    path = Path(path)
    lines = [
        f"# dmst-instance v1 n={instance.n} seed={instance.seed} kind={instance.kind}"
    ]
    for x, y in instance.points:
        lines.append(f"{x:.17g} {y:.17g}")
    path.write_text("\n".join(lines) + "\n")


def read_instance(path) -> Instance:
    path = Path(path)
    text = path.read_text().strip().splitlines()
    if not text:
        raise ValueError(f"{path}: empty instance file")
    m = _HEADER_RE.match(text[0].strip())
    if not m:
        raise ValueError(f"{path}: malformed header {text[0]!r}")
    n = int(m.group(1))
    seed = None if m.group(2) == "None" else int(m.group(2))
    kind = m.group(3)
    pts = []
    for lineno, line in enumerate(text[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'x y', got {line!r}")
        try:
            pts.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: non-numeric coordinate") from exc
    if len(pts) != n:
        raise ValueError(f"{path}: header says n={n} but found {len(pts)} points")
    if len(set(pts)) != len(pts):
        raise ValueError(f"{path}: duplicate points")
    return Instance(id=path.stem, points=np.array(pts), kind=kind, seed=seed)


def read_instances(path) -> list[Instance]:
    """Read one instance file or every *.txt instance in a directory."""
    path = Path(path)
    if path.is_dir():
        files = sorted(path.glob("*.txt"))
        if not files:
            raise ValueError(f"{path}: no instance files found")
        return [read_instance(f) for f in files]
    return [read_instance(path)]
