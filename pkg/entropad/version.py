#!/bin/env python3
"""
Version identifier of entropad: the release number, plus a build number taken from git
history for development builds. Run as a script to print it.
"""
import logging
from dataclasses import dataclass
from importlib.util import module_from_spec, spec_from_loader

from packaging.version import parse as parse_version

logger = logging.getLogger(__name__)


release_version = "1"
"""
Public release number. Bump it on the first commit of a release; every later commit
with the same number is a development build of it and gets "-r<build>" appended.
"""


@dataclass(frozen=True)
class VersionInfo:
    snapshot_build: bool
    """The working tree differs from HEAD."""
    build_number: int
    """Commits up to and including HEAD, plus one for a snapshot."""
    primary_release: bool
    """HEAD is the first commit carrying release_version."""

    def get_full_version(self) -> str:
        """`1` on a release commit, `1-r42` after it, `1-r43-dev` with local edits."""
        version = release_version
        if not self.primary_release:
            version += f"-r{self.build_number}"
        if self.snapshot_build:
            version += "-dev"
        return version


def _release_of(commit) -> str:
    """release_version as recorded in the given commit, or None."""
    try:
        source = commit.tree["entropad"]["version.py"].data_stream.read()
    except KeyError:
        return None
    module = module_from_spec(spec_from_loader(__name__ + "_at_commit", loader=None))
    exec(source, module.__dict__)
    return getattr(module, "release_version", None)


def _same_release(recorded: str) -> bool:
    return recorded is not None and parse_version(recorded) == parse_version(
        release_version
    )


def read_git_version() -> VersionInfo:
    """Derive the version from the enclosing git repository."""
    from git import Repo

    repo = Repo(path=None, search_parent_directories=True)
    snapshot = repo.is_dirty(untracked_files=True)
    head = repo.head.commit
    build_number = (1 if snapshot else 0) + 1 + sum(1 for _ in head.iter_parents())
    ancestors = [head] if snapshot else head.iter_parents()
    primary = not any(_same_release(_release_of(commit)) for commit in ancestors)
    return VersionInfo(snapshot, build_number, primary)


def _create_static_version_module() -> str:
    """Source of entropad/version_static.py, embedded into builds by setup.py."""
    return f"""
# Dynamically generated file! See entropad.version

from entropad.version import {VersionInfo.__name__}


embedded_version_info = {read_git_version()!r}
"""


def get_full_version() -> str:
    """
    The project version. Uses the embedded static version of a build when present,
    otherwise git, otherwise the bare release number.
    """
    try:
        from . import version_static

        return version_static.embedded_version_info.get_full_version()
    except ImportError:
        pass
    try:
        from git import InvalidGitRepositoryError, NoSuchPathError
    except ImportError:
        logger.warning("GitPython is missing, version number is approximate")
        return VersionInfo(False, 0, True).get_full_version()
    try:
        return read_git_version().get_full_version()
    except (InvalidGitRepositoryError, NoSuchPathError, ValueError):
        logger.warning("entropad cannot calculate an accurate version number.")
        return VersionInfo(False, 0, True).get_full_version()


if __name__ == "__main__":
    print(get_full_version(), end="")
