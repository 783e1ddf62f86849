from __future__ import annotations

import pathlib

import pytest

from flatlab._files import find_problem_files, is_ignored


@pytest.fixture
def repo(tmp_path: pathlib.Path, monkeypatch: pytest.MonkeyPatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / ".git").mkdir()
    (tmp_path / ".gitignore").write_text("scratch\n")
    return tmp_path


def _touch(path: pathlib.Path, text: str = "field Q\n") -> pathlib.Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


@pytest.mark.parametrize(
    "path",
    [
        "scratch",
        "scratch/residue.flat",
        "problems/scratch",
        "problems/scratch/residue.flat",
    ],
)
def test_ignored_below_repo(repo, path):
    assert is_ignored(path)


@pytest.mark.parametrize(
    "path", ["problems", "problems/residue.flat", "../scratch"]
)
def test_not_ignored(repo, path):
    assert not is_ignored(path)


def test_ignore_through_parent_name(repo):
    assert is_ignored(f"../{repo.name}/scratch/residue.flat")


def test_ignore_without_repo(
    tmp_path: pathlib.Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.chdir(tmp_path)
    (tmp_path / ".gitignore").write_text("scratch")

    assert is_ignored("scratch/residue.flat")
    assert not is_ignored("residue.flat")


def test_ignore_in_subdirectory(repo):
    (repo / "sub").mkdir()
    (repo / "sub" / ".gitignore").write_text("drafts")

    assert is_ignored("sub/drafts/residue.flat")
    assert not is_ignored("drafts/residue.flat")
    assert is_ignored("sub/scratch/residue.flat")


def test_ignore_stops_at_nested_repo(
    tmp_path: pathlib.Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.chdir(tmp_path)
    (tmp_path / ".gitignore").write_text("vendored")
    (tmp_path / "inner" / ".git").mkdir(parents=True)

    assert is_ignored("vendored/residue.flat")
    assert not is_ignored("inner/vendored/residue.flat")


def test_ignore_symlink_circular(
    tmp_path: pathlib.Path, monkeypatch: pytest.MonkeyPatch
) -> None:
    monkeypatch.chdir(tmp_path)

    (tmp_path / "link1").symlink_to(tmp_path / "link2")
    (tmp_path / "link2").symlink_to(tmp_path / "link1")

    assert not is_ignored("link1")
    assert not is_ignored("link2")


def test_find_problem_files_in_directory(repo):
    _touch(repo / "b.flat")
    _touch(repo / "a.flat")
    _touch(repo / "nested" / "c.flat")
    _touch(repo / "scratch" / "d.flat")
    _touch(repo / "notes.txt")

    found = list(find_problem_files(["."]))

    assert found == [
        pathlib.Path("a.flat"),
        pathlib.Path("b.flat"),
        pathlib.Path("nested/c.flat"),
    ]


def test_find_problem_files_keeps_named_files(repo):
    named = _touch(repo / "scratch" / "kept.txt")

    found = list(find_problem_files([named, named]))

    assert found == [named]


def test_find_problem_files_defaults_to_current_directory(repo):
    _touch(repo / "a.flat")

    assert list(find_problem_files([])) == [pathlib.Path("a.flat")]


def test_find_problem_files_missing_path_is_passed_through(repo):
    missing = repo / "missing.flat"

    assert list(find_problem_files([missing])) == [missing]
