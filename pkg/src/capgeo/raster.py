"""Pixel-grid oracle for areas, erosions and openings.

Deliberately independent of the vector code path: the boundary is flattened
to a fine polyline and filled with scikit-image, distances come from the
Euclidean distance transform in scipy.ndimage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from skimage.draw import polygon as fill_polygon


@dataclass(frozen=True)
class Grid:
    x0: float
    y0: float
    h: float
    shape: tuple[int, int]  # rows (y), cols (x)

    @property
    def pixel_area(self):
        return self.h * self.h


def _flatten(d, h):
    """Boundary polyline with chord error below h/20."""
    xs, ys = [], []
    for row in d.pieces:
        if row[0] == 0.0:
            xs.append(row[1])
            ys.append(row[2])
            continue
        cx, cy, rad, phi0, sweep = row[5:10]
        # sagitta rad*(1 - cos(step/2)) <= h/20
        step = 2 * math.acos(max(-1.0, 1 - h / (20 * rad))) if rad > h / 40 else math.pi / 2
        m = max(2, int(math.ceil(abs(sweep) / step)))
        a = phi0 + sweep * np.arange(m) / m
        xs.extend((cx + rad * np.cos(a)).tolist())
        ys.extend((cy + rad * np.sin(a)).tolist())
    return np.array(xs), np.array(ys)


def grid_for(d, n: int = 1024, pad_pixels: int = 3) -> Grid:
    xmin, ymin, xmax, ymax = d.bbox
    h = max(xmax - xmin, ymax - ymin) / n
    x0 = xmin - pad_pixels * h
    y0 = ymin - pad_pixels * h
    cols = int(math.ceil((xmax - x0) / h)) + pad_pixels + 1
    rows = int(math.ceil((ymax - y0) / h)) + pad_pixels + 1
    return Grid(x0, y0, h, (rows, cols))


def rasterize(d, n: int = 1024, grid: Grid | None = None):
    """Boolean mask of pixel centers inside d."""
    g = grid or grid_for(d, n)
    xs, ys = _flatten(d, g.h)
    # pixel (i, j) has center (x0 + (j + 0.5) h, y0 + (i + 0.5) h)
    cols = (xs - g.x0) / g.h - 0.5
    rows = (ys - g.y0) / g.h - 0.5
    mask = np.zeros(g.shape, dtype=bool)
    rr, cc = fill_polygon(rows, cols, shape=g.shape)
    mask[rr, cc] = True
    return mask, g


def area(d, n: int = 1024) -> float:
    mask, g = rasterize(d, n)
    return float(mask.sum()) * g.pixel_area


def _erosion_mask(mask, g, r):
    # distance from each inside pixel center to the nearest outside center;
    # the true boundary sits about half a pixel closer
    edt = ndimage.distance_transform_edt(mask) * g.h
    return mask & (edt - 0.5 * g.h >= r)


def erode(d, r: float, n: int = 1024):
    """(area, number of 8-connected components, mask, grid) of the inner parallel set."""
    mask, g = rasterize(d, n)
    er = _erosion_mask(mask, g, r)
    _, ncomp = ndimage.label(er, structure=np.ones((3, 3)))
    return float(er.sum()) * g.pixel_area, int(ncomp), er, g


def dilate_mask(mask, g, r):
    edt = ndimage.distance_transform_edt(~mask) * g.h
    return mask | (edt <= r + 0.5 * g.h)


def opening_area(d, r: float, n: int = 1024) -> float:
    mask, g = rasterize(d, n)
    er = _erosion_mask(mask, g, r)
    return float((dilate_mask(er, g, r) & mask).sum()) * g.pixel_area


def boundary_pixels(mask) -> int:
    """Inside pixels with at least one 4-neighbour outside."""
    inner = ndimage.binary_erosion(mask, structure=ndimage.generate_binary_structure(2, 1))
    return int((mask & ~inner).sum())
