# -*- coding: utf-8 -*-

# Version number for gtdih-python.  This is `git describe` when run from a
# working copy, with "-dirty" appended for uncommitted changes, and the
# contents of RELEASE-VERSION otherwise.  RELEASE-VERSION is rewritten
# whenever the two disagree so that sdist tarballs carry the right number;
# list it in MANIFEST.in and keep it out of git.

__all__ = ['get_git_version']

from subprocess import Popen, PIPE

_RELEASE_FILE = 'RELEASE-VERSION'


def _run_git(*args):
    try:
        p = Popen(['git'] + list(args), stdout=PIPE, stderr=PIPE)
        out, _ = p.communicate()
    except OSError:
        return None
    if p.returncode != 0:
        return None
    return out.decode('UTF-8')


def call_git_describe(abbrev):
    out = _run_git('describe', '--tags', '--abbrev=%d' % abbrev)
    if not out:
        return None
    return out.splitlines()[0].strip()


def is_dirty():
    out = _run_git('diff-index', '--name-only', 'HEAD')
    return bool(out and out.strip())


def read_release_version():
    try:
        with open(_RELEASE_FILE, 'r') as fh:
            return fh.readline().strip() or None
    except OSError:
        return None


def write_release_version(version):
    with open(_RELEASE_FILE, 'w') as fh:
        fh.write("%s\n" % version)


def get_git_version(abbrev=7):
    release_version = read_release_version()

    version = call_git_describe(abbrev)
    if version is not None and is_dirty():
        version += "-dirty"

    if version is None:
        version = release_version
    if version is None:
        # Neither a tagged working copy nor a release tarball
        version = '0.0.0'

    if version != release_version:
        write_release_version(version)
    return version


if __name__ == "__main__":
    print(get_git_version())
