"""Wavefront OBJ export of (x, y)-grid samples with per-vertex normals."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np


@dataclass
class MeshFile:
    vertices: np.ndarray
    normals: np.ndarray
    faces: np.ndarray  # (F, 3), zero-based

    def validate(self) -> None:
        if not (np.all(np.isfinite(self.vertices)) and np.all(np.isfinite(self.normals))):
            raise ValueError("mesh contains non-finite coordinates")
        if self.faces.size and (self.faces.min() < 0 or self.faces.max() >= len(self.vertices)):
            raise ValueError("face index out of range")


def grid_mesh(positions: np.ndarray, normals: np.ndarray, flip: bool = False) -> MeshFile:
    """Triangulate an (nx, ny, 3) sample grid, two triangles per quad.

    Vertices are ordered x-major. Winding follows f_x, f_y (counter-clockwise
    about f_x x f_y) unless ``flip`` is set.
    """
    nx, ny, _ = positions.shape
    idx = np.arange(nx * ny).reshape(nx, ny)
    a, b = idx[:-1, :-1].ravel(), idx[1:, :-1].ravel()
    c, d = idx[1:, 1:].ravel(), idx[:-1, 1:].ravel()
    tri = np.concatenate([np.stack([a, b, c], 1), np.stack([a, c, d], 1)])
    tri = tri.reshape(2, -1, 3).transpose(1, 0, 2).reshape(-1, 3)
    if flip:
        tri = tri[:, ::-1]
    mesh = MeshFile(positions.reshape(-1, 3), normals.reshape(-1, 3), tri)
    mesh.validate()
    return mesh


def _fmt(row) -> str:
    return " ".join(format(float(v), ".17g") for v in row)


def write_obj(mesh: MeshFile, path) -> None:
    mesh.validate()
    lines = [f"v {_fmt(v)}" for v in mesh.vertices]
    lines += [f"vn {_fmt(n)}" for n in mesh.normals]
    lines += ["f " + " ".join(f"{i + 1}//{i + 1}" for i in face) for face in mesh.faces]
    Path(path).write_text("\n".join(lines) + "\n")


def export_mesh(positions, normals, path, flip: bool = False) -> MeshFile:
    mesh = grid_mesh(np.asarray(positions, dtype=float), np.asarray(normals, dtype=float), flip)
    write_obj(mesh, path)
    return mesh


def read_obj(path) -> MeshFile:
    verts, norms, faces = [], [], []
    for line in Path(path).read_text().splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(p) for p in parts[1:4]])
        elif parts[0] == "vn":
            norms.append([float(p) for p in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(p.split("/")[0]) - 1 for p in parts[1:4]])
    return MeshFile(np.array(verts).reshape(-1, 3), np.array(norms).reshape(-1, 3),
                    np.array(faces, dtype=int).reshape(-1, 3))
