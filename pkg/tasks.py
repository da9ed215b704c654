# -*- coding: utf-8 -*-
from __future__ import print_function

import contextlib
import glob
import os
import sys
from shutil import rmtree

from invoke import Exit
from invoke import task

BASE_FOLDER = os.path.dirname(__file__)


def log(message, level='INFO'):
    sys.stdout.write('[{}] {}\n'.format(level, message))
    sys.stdout.flush()


@contextlib.contextmanager
def chdir(dirname=None):
    current_dir = os.getcwd()
    try:
        if dirname is not None:
            os.chdir(dirname)
        yield
    finally:
        os.chdir(current_dir)


@task(default=True)
def help(ctx):
    """Lists available tasks and usage."""
    ctx.run('invoke --list')
    log('Use "invoke -h <taskname>" to get detailed help for a task.')


@task(help={
    'runs': 'True to also remove experiment output under runs/, otherwise False.'})
def clean(ctx, runs=False):
    """Removes build artifacts, bytecode and generated documentation."""
    with chdir(BASE_FOLDER):
        folders = ['build/', 'dist/', 'docs/api/generated', 'src/acsim.egg-info/', '.pytest_cache']
        for t in ('src', 'tests', 'scripts'):
            folders.extend(glob.glob('{}/**/__pycache__'.format(t), recursive=True))
        if runs:
            folders.append('runs/')
        for folder in folders:
            rmtree(os.path.join(BASE_FOLDER, folder), ignore_errors=True)


@task(help={
      'rebuild': 'True to clean all previously built docs before starting, otherwise False.'})
def docs(ctx, rebuild=False):
    """Builds the HTML documentation into dist/docs."""
    if rebuild:
        clean(ctx)
    with chdir(BASE_FOLDER):
        ctx.run('sphinx-build {} -b html docs dist/docs'.format('-E' if rebuild else ''))


@task()
def lint(ctx):
    """Check the consistency of coding style."""
    log('Running flake8 python linter...')
    ctx.run('flake8 src tests scripts')
    log('Checking import order...')
    ctx.run('isort --check-only --diff src tests scripts')


@task()
def check(ctx):
    """Style checks plus package metadata."""
    with chdir(BASE_FOLDER):
        lint(ctx)
        log('Checking docstrings...')
        ctx.run('pydocstyle src/acsim', warn=True)
        log('Checking metadata...')
        ctx.run('python setup.py check --strict --metadata')


@task(help={
      'checks': 'True to run all checks before testing, otherwise False.',
      'slow': 'True to include the long acceptance runs, otherwise False.'})
def test(ctx, checks=False, slow=False):
    """Run all tests."""
    if checks:
        check(ctx)

    with chdir(BASE_FOLDER):
        cmd = ['pytest']
        if slow:
            cmd.append('--runslow')
        ctx.run(' '.join(cmd))


@task(help={
      'force': 'True to retrain even if the weights file exists, otherwise False.'})
def classifier(ctx, force=False):
    """Train the digit classifier used by the attack experiments and store its weights in src/acsim/data/."""
    with chdir(BASE_FOLDER):
        ctx.run('python scripts/train_classifier.py{}'.format(' --force' if force else ''))


@task(help={
      'out': 'Folder receiving one run.csv per space and temperature.',
      'seed': 'Seed of every run.'})
def ablation(ctx, out='runs/ablation', seed=0):
    """Fixed-temperature runs on the toy mixture."""
    with chdir(BASE_FOLDER):
        ctx.run('python scripts/alpha_ablation.py --out {} --seed {}'.format(out, seed))


@task(help={
      'release_type': 'Type of release follows semver rules. Must be one of: major, minor, patch.'})
def release(ctx, release_type):
    """Bump the version after all checks pass."""
    if release_type not in ('patch', 'minor', 'major'):
        raise Exit('The release type parameter is invalid.\nMust be one of: major, minor, patch')
    ctx.run('invoke check')
    ctx.run('bump2version {} --verbose'.format(release_type))
