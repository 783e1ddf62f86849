"""
Discovery of ``.flat`` problem files below directories, honouring the
``.gitignore`` files between each candidate and its project root.
"""

from __future__ import annotations

import functools
import logging
import os
import pathlib
from typing import Iterable, Iterator, List, Set

import pathspec

logger = logging.getLogger(__name__)

PROBLEM_SUFFIX = ".flat"

_NO_PATTERNS = pathspec.GitIgnoreSpec([])


@functools.lru_cache(maxsize=None)
def _is_project_root(directory: pathlib.Path) -> bool:
    return directory == directory.parent or (directory / ".git").is_dir()


@functools.lru_cache(maxsize=None)
def _ignore_spec(directory: pathlib.Path) -> pathspec.GitIgnoreSpec:
    gitignore = directory / ".gitignore"
    if not gitignore.is_file():
        return _NO_PATTERNS
    with gitignore.open(encoding="utf-8") as lines:
        return pathspec.GitIgnoreSpec.from_lines(lines)


def is_ignored(path: str | os.PathLike) -> bool:
    # Absolute but unresolved, so symbolic links keep their own names.
    path = pathlib.Path(os.path.abspath(path))
    for directory in path.parents:
        if _ignore_spec(directory).match_file(path.relative_to(directory)):
            return True
        if _is_project_root(directory):
            break
    return False


def _problems_below(directory: pathlib.Path) -> List[pathlib.Path]:
    found = []
    for candidate in directory.rglob(f"*{PROBLEM_SUFFIX}"):
        if not candidate.is_file():
            continue
        if is_ignored(candidate):
            logger.debug("skipping ignored %s", candidate)
            continue
        found.append(candidate)
    return sorted(found)


def find_problem_files(
    paths: Iterable[str | os.PathLike[str]],
) -> Iterator[pathlib.Path]:
    """
    Yields each named file as is, and every problem file below each named
    directory, in sorted order and without repeats.  No paths means the
    current directory.
    """
    seen: Set[pathlib.Path] = set()
    for name in paths or ["."]:
        path = pathlib.Path(name)
        candidates = _problems_below(path) if path.is_dir() else [path]
        for candidate in candidates:
            if candidate not in seen:
                seen.add(candidate)
                yield candidate
