"""Package version, resolved from git, the build-time ``_version`` file or metadata.

The module is not called ``_version.py`` because hatch-vcs writes that file.
"""

import pathlib

PACKAGE = "dilatia"


def _resolve() -> str:
    checkout = pathlib.Path(__file__).parent.parent.parent
    if (checkout / ".git").is_dir():
        try:
            from setuptools_scm import get_version

            return get_version(root="../..", relative_to=__file__, version_scheme="post-release")
        except (ImportError, LookupError):
            pass
    try:
        from ._version import version  # type: ignore

        return version
    except ImportError:
        pass
    from importlib.metadata import PackageNotFoundError, version as dist_version

    try:
        return dist_version(PACKAGE)
    except PackageNotFoundError:
        # Running from a source tree that was never installed.
        return "0.0.0+unknown"


__version__ = _resolve()

__all__ = ("__version__",)
