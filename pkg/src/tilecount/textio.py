"""Loading tile sets and regions from command-line style specs."""

from __future__ import annotations

import re
from pathlib import Path

from .grid import Region, TileSet, dominoes, monomino, parse_grid, ribbon_set, s_tiles

_RIBBON = re.compile(r"^ribbon:(\d+)(?::([\d,]+))?$")


def load_tileset(spec: str) -> TileSet:
    """Tile set from ``ribbon:n``, ``ribbon:n:i,j,..``, ``S``, ``dominoes``,
    ``monomino`` or a manifest file.

    A manifest lists one tile grid file per line (relative paths resolve
    against the manifest's directory); the line order fixes tile indices.
    An optional second field names the tile.
    """
    m = _RIBBON.match(spec)
    if m:
        tiles = ribbon_set(int(m.group(1)))
        if m.group(2):
            tiles = tiles.subset(int(i) for i in m.group(2).split(","))
        return tiles
    if spec == "S":
        return s_tiles()
    if spec == "dominoes":
        return dominoes()
    if spec == "monomino":
        return monomino()
    path = Path(spec)
    if not path.is_file():
        raise ValueError(f"unknown tile set {spec!r}")
    shapes, names = [], []
    for line in path.read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        tile_path = Path(fields[0])
        if not tile_path.is_absolute():
            tile_path = path.parent / tile_path
        shapes.append(parse_grid(tile_path.read_text()))
        names.append(fields[1] if len(fields) > 1 else f"t{len(shapes)}")
    if not shapes:
        raise ValueError(f"manifest {spec} lists no tiles")
    return TileSet.from_cells(shapes, names)


def load_region(path: str | Path) -> Region:
    return Region(parse_grid(Path(path).read_text()))
