"""Sampled surface meshes and their OBJ / CSV export."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .profile import ProfileCurve
from .surface import SurfaceKind, eval_surface, gaussian_curvature


@dataclass
class SurfaceMesh:
    kind: SurfaceKind
    nt: int
    ns: int
    t: np.ndarray  # (ns, nt)
    s: np.ndarray  # (ns, nt)
    points: np.ndarray  # (ns, nt, 4)
    K: np.ndarray  # (ns, nt)

    @property
    def n_vertices(self) -> int:
        return self.nt * self.ns

    @property
    def n_quads(self) -> int:
        return (self.nt - 1) * (self.ns - 1)

    def quads(self) -> list[tuple[int, int, int, int]]:
        """1-based vertex indices, rows running over t."""
        out = []
        for j in range(self.ns - 1):
            for i in range(self.nt - 1):
                v = j * self.nt + i + 1
                out.append((v, v + 1, v + 1 + self.nt, v + self.nt))
        return out


def build_mesh(
    kind: SurfaceKind,
    curve: ProfileCurve,
    nt: int,
    ns: int,
    t_range: tuple[float, float],
    s_range: tuple[float, float],
) -> SurfaceMesh:
    if nt < 2 or ns < 2:
        raise ValueError(f"mesh grid must be at least 2x2, got {nt}x{ns}")
    kind = SurfaceKind.parse(kind)
    ts = np.linspace(t_range[0], t_range[1], nt)
    ss = np.linspace(s_range[0], s_range[1], ns)
    T, S = np.meshgrid(ts, ss)
    pts = np.empty((ns, nt, 4))
    K = np.empty((ns, nt))
    for j, s in enumerate(ss):
        k = gaussian_curvature(kind, curve, float(s))
        for i, t in enumerate(ts):
            pts[j, i] = eval_surface(kind, curve, float(t), float(s)).array()
            K[j, i] = k
    return SurfaceMesh(kind, nt, ns, T, S, pts, K)


def parse_projection(text) -> tuple[int, int, int]:
    """'1,2,4' -> (1, 2, 4); indices are 1-based and must be distinct."""
    parts = text.split(",") if isinstance(text, str) else list(text)
    try:
        axes = tuple(int(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"bad projection {text!r}") from exc
    if len(axes) != 3 or len(set(axes)) != 3 or not all(1 <= a <= 4 for a in axes):
        raise ValueError(f"projection needs 3 distinct axes in 1..4, got {text!r}")
    return axes


def _fmt(v: float) -> str:
    return repr(float(v))


def write_obj(mesh: SurfaceMesh, path, project=(1, 2, 3)) -> None:
    axes = [a - 1 for a in parse_projection(project)]
    lines = [f"# {mesh.kind.value} {mesh.nt}x{mesh.ns} projected on x{axes[0] + 1} x{axes[1] + 1} x{axes[2] + 1}"]
    flat = mesh.points.reshape(-1, 4)
    for p in flat:
        lines.append("v " + " ".join(_fmt(p[a]) for a in axes))
    for q in mesh.quads():
        lines.append("f " + " ".join(str(i) for i in q))
    Path(path).write_text("\n".join(lines) + "\n")


def write_csv(mesh: SurfaceMesh, path) -> None:
    lines = ["t,s,x1,x2,x3,x4,K"]
    for j in range(mesh.ns):
        for i in range(mesh.nt):
            row = [mesh.t[j, i], mesh.s[j, i], *mesh.points[j, i], mesh.K[j, i]]
            lines.append(",".join(_fmt(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")
