"""Access to the bundled fixture data: the small-group catalog and the
cohomology packages."""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources

from .errors import GroupFileError
from .groups import PermGroup, parse_permutation


def fixtures_root():
    return resources.files("cohodepth") / "fixtures"


def _parse_group_text(text, origin="<catalog>"):
    degree = None
    gens = []
    name = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.startswith("#"):
            m = re.search(r"name:\s*(\S.*)", raw)
            if m:
                name = m.group(1).strip()
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if degree is None:
            m = re.fullmatch(r"degree\s+(\d+)", line)
            if not m:
                raise GroupFileError(f"{origin}:{lineno}: expected 'degree n'")
            degree = int(m.group(1))
            continue
        gens.append(parse_permutation(line, degree))
    if degree is None:
        raise GroupFileError(f"{origin}: missing 'degree n' header")
    return PermGroup(degree, tuple(gens)), name


@lru_cache(maxsize=1)
def load_catalog():
    """(order, index) -> PermGroup for every bundled catalog entry."""
    root = fixtures_root() / "catalog"
    out = {}
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        m = re.fullmatch(r"(\d+)_(\d+)\.grp", entry.name)
        if not m:
            continue
        key = (int(m.group(1)), int(m.group(2)))
        group, _ = _parse_group_text(entry.read_text(), origin=entry.name)
        out[key] = group
    return out


def catalog_id_str(key):
    return f"SG({key[0]},{key[1]})" if key else "unknown"


def list_packages():
    root = fixtures_root() / "packages"
    return sorted(
        entry.name[: -len(".coh")]
        for entry in root.iterdir()
        if entry.name.endswith(".coh")
    )


def package_text(name):
    return (fixtures_root() / "packages" / f"{name}.coh").read_text()


def package_bytes(name):
    return (fixtures_root() / "packages" / f"{name}.coh").read_bytes()
