""" Package version from `git describe`, falling back to RELEASE-VERSION.

    The RELEASE-VERSION file is rewritten whenever git reports a different
    version, so unpacked sdists (no .git) still know their version. Keep
    RELEASE-VERSION out of git and list it in MANIFEST.in.
"""

import subprocess

__all__ = ("get_git_version",)

RELEASE_FILE = "RELEASE-VERSION"


def _git(*args):
    try:
        proc = subprocess.run(['git'] + list(args), capture_output=True,
                              text=True, check=True)
    except (OSError, subprocess.CalledProcessError):
        return None
    return proc.stdout.strip()


def call_git_describe(abbrev=7):
    out = _git('describe', '--abbrev=%d' % abbrev)
    return out or None


def is_dirty():
    out = _git('diff-index', '--name-only', 'HEAD')
    return bool(out)


def read_release_version():
    try:
        with open(RELEASE_FILE, "r") as fh:
            return fh.readline().strip() or None
    except OSError:
        return None


def write_release_version(version):
    with open(RELEASE_FILE, "w") as fh:
        fh.write("%s\n" % version)


def get_git_version(abbrev=7):
    release_version = read_release_version()

    version = call_git_describe(abbrev)
    if version is not None and is_dirty():
        version += "-dirty"
    if version is None:
        version = release_version
    if version is None:
        raise ValueError("Cannot find the version number!")

    if version != release_version:
        write_release_version(version)
    return version


if __name__ == "__main__":
    print(get_git_version())
