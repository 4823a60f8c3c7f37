"""The simulated 3x6 skin patch: geometry, pattern acquisition from force
frames, the canonical triangle dataset, corruption, and LED-style rendering.

A tactile pattern is a length-18 float vector of 0/1 cell activations.
Cells are indexed column-major: cell c sits in column c // 3, so column k
holds cells (3k, 3k+1, 3k+2).
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class SkinGeometry:
    """Rectangular index grid of the skin patch."""

    rows: int = 3
    cols: int = 6

    @property
    def cell_count(self):
        return self.rows * self.cols

    def column_of(self, cell):
        if not 0 <= cell < self.cell_count:
            raise ValueError(f"cell index {cell} out of range")
        return cell // self.rows


GEOMETRY = SkinGeometry()

# Canonical triangle dataset: one three-cell triangle per pair of adjacent
# columns, pairwise disjoint (columns 0, 2 and 4).
TRIANGLE_CELLS = ((0, 1, 2), (6, 7, 8), (12, 13, 14))


@dataclass(frozen=True)
class AcquisitionConfig:
    """Skin acquisition hyperparameters.

    force_threshold: per-sensor force level a cell must exceed to be on.
    min_cells: minimum number of on cells for a round to be accepted.
    combine_iter: number of consecutive force frames merged into one round.
    display_duration: number of identical frames when rendering a pattern.
    """

    force_threshold: float = 0.012
    min_cells: int = 2
    combine_iter: int = 5
    display_duration: int = 3

    def __post_init__(self):
        if not 0.0 <= self.force_threshold <= 1.0:
            raise ValueError("force_threshold must lie in [0, 1]")
        for name in ("min_cells", "combine_iter", "display_duration"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class ForceFrame:
    """One time step of normal-force readings: 18 cells x 3 sensors in [0, 1]."""

    readings: np.ndarray
    step_index: int = 0

    def __post_init__(self):
        readings = np.asarray(self.readings, dtype=np.float64)
        if readings.shape != (GEOMETRY.cell_count, 3):
            raise ValueError(
                f"readings must have shape (18, 3), got {readings.shape}"
            )
        if readings.min() < 0.0 or readings.max() > 1.0:
            raise ValueError("force readings must lie in [0, 1]")
        object.__setattr__(self, "readings", readings)


def as_pattern(values):
    """Validate and copy a binary cell-activation vector."""
    p = np.array(values, dtype=np.float64)
    if p.shape != (GEOMETRY.cell_count,):
        raise ValueError(f"pattern must have {GEOMETRY.cell_count} cells")
    if not np.all((p == 0.0) | (p == 1.0)):
        raise ValueError("pattern entries must be 0 or 1")
    return p


def blank():
    """The all-off pattern."""
    return np.zeros(GEOMETRY.cell_count, dtype=np.float64)


def pattern_from_cells(cells):
    p = blank()
    p[list(cells)] = 1.0
    return p


@dataclass
class Dataset:
    """Ordered collection of training patterns."""

    patterns: list = field(default_factory=list)
    min_cells: int = 2

    def __post_init__(self):
        self.patterns = [as_pattern(p) for p in self.patterns]
        for p in self.patterns:
            if p.sum() < self.min_cells:
                raise ValueError(
                    f"dataset pattern has fewer than {self.min_cells} active cells"
                )

    def __len__(self):
        return len(self.patterns)

    def as_matrix(self):
        return np.stack(self.patterns)


def make_triangle_dataset(geometry=GEOMETRY):
    """Three disjoint three-cell triangles, one per pair of adjacent columns."""
    if (geometry.rows, geometry.cols) != (3, 6):
        raise ValueError("triangle dataset is defined for the standard 3x6 patch")
    return Dataset([pattern_from_cells(cells) for cells in TRIANGLE_CELLS])


def acquire_pattern(frames, config=AcquisitionConfig()):
    """Merge one round of force frames into a pattern, or reject the round.

    A cell is on iff any of its three sensors exceeds the force threshold in
    any frame of the round. Returns None when fewer than ``min_cells`` cells
    are on (routine filtering, not an error).
    """
    if len(frames) != config.combine_iter:
        raise ValueError(
            f"a round needs exactly {config.combine_iter} frames, got {len(frames)}"
        )
    stacked = np.stack([f.readings for f in frames])  # (C, 18, 3)
    peak = stacked.max(axis=(0, 2))
    cells = (peak > config.force_threshold).astype(np.float64)
    if cells.sum() < config.min_cells:
        return None
    return cells


def corrupt(p, k, rng):
    """Switch off k uniformly chosen active cells; the input is not modified."""
    p = as_pattern(p)
    active = np.flatnonzero(p)
    if k > active.size:
        raise ValueError(f"cannot switch off {k} of {active.size} active cells")
    if k > 0:
        off = rng.choice(active, size=k, replace=False)
        p[off] = 0.0
    return p


def render_led_frames(p, config=AcquisitionConfig()):
    """LED display frames: 'B' for on cells, 'G' for off, repeated D times.

    Each frame is a string of 3 rows x 6 columns; the character at row r,
    column k shows cell 3k + r.
    """
    p = as_pattern(p)
    grid = p.reshape(GEOMETRY.cols, GEOMETRY.rows).T  # (rows, cols)
    frame = "\n".join(
        "".join("B" if grid[r, k] else "G" for k in range(GEOMETRY.cols))
        for r in range(GEOMETRY.rows)
    )
    return [frame] * config.display_duration


def force_frames_for_pattern(p, config=AcquisitionConfig(), rng=None):
    """Simulated force frames for one acquisition round showing pattern ``p``.

    With an rng, off cells read uniform noise below half the threshold and
    on cells read threshold plus uniform [0, 0.05); without one, readings
    are noise-free (0 and twice the threshold).
    """
    p = as_pattern(p)
    theta = config.force_threshold
    frames = []
    for step in range(config.combine_iter):
        if rng is None:
            readings = np.where(p[:, None] > 0.0, 2.0 * theta, 0.0)
            readings = np.broadcast_to(readings, (GEOMETRY.cell_count, 3)).copy()
        else:
            noise = rng.uniform(0.0, theta / 2.0, size=(GEOMETRY.cell_count, 3))
            press = theta + rng.uniform(0.0, 0.05, size=(GEOMETRY.cell_count, 3))
            readings = np.where(p[:, None] > 0.0, press, noise)
        frames.append(ForceFrame(readings=readings, step_index=step))
    return frames


def format_pattern_block(p):
    """ASCII block for one pattern: 3 lines of 6 '0'/'1' characters."""
    p = as_pattern(p)
    grid = p.reshape(GEOMETRY.cols, GEOMETRY.rows).T
    return "\n".join(
        "".join("1" if grid[r, k] else "0" for k in range(GEOMETRY.cols))
        for r in range(GEOMETRY.rows)
    )


def save_patterns(path, patterns):
    """Write patterns as blank-line separated ASCII blocks."""
    blocks = [format_pattern_block(p) for p in patterns]
    with open(path, "w") as fh:
        fh.write("\n\n".join(blocks))
        fh.write("\n")


def load_patterns(path):
    """Read a pattern file written by :func:`save_patterns`."""
    with open(path) as fh:
        text = fh.read()
    patterns = []
    for block in text.split("\n\n"):
        lines = [line for line in block.splitlines() if line.strip()]
        if not lines:
            continue
        if len(lines) != GEOMETRY.rows or any(
            len(line) != GEOMETRY.cols for line in lines
        ):
            raise ValueError(f"malformed pattern block in {path}: {lines!r}")
        p = blank()
        for r, line in enumerate(lines):
            for k, ch in enumerate(line):
                if ch not in "01":
                    raise ValueError(f"invalid character {ch!r} in {path}")
                p[k * GEOMETRY.rows + r] = float(ch == "1")
        patterns.append(p)
    return patterns
