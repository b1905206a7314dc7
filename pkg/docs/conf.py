# Sphinx configuration for the k-Symplectic Lagrangian Toolkit.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

sys.path.insert(0, os.path.abspath('../src'))

from ksymplectic import __version__  # noqa: E402

# -- Project information -----------------------------------------------------

project = 'k-Symplectic Lagrangian Toolkit'
copyright = '2025, The ksymplectic-toolkit developers'
author = 'The ksymplectic-toolkit developers'
release = __version__
version = '.'.join(release.split('.')[:2])

root_doc = 'index'

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',     # Google style docstrings
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.coverage',
    'sphinx_rtd_theme',
    'myst_parser',             # docs/formats.md
]

source_suffix = {
    '.rst': 'restructuredtext',
    '.md': 'markdown',
}

exclude_patterns = ['_build']

autodoc_default_options = {
    'members': True,
    'member-order': 'bysource',
    'undoc-members': True,
}
autodoc_typehints = 'description'

napoleon_google_docstring = True
napoleon_numpy_docstring = False
napoleon_use_rtype = True

myst_enable_extensions = [
    'colon_fence',
    'deflist',
    'dollarmath',
]
myst_heading_anchors = 3

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'pandas': ('https://pandas.pydata.org/docs/', None),
    'pydantic': ('https://docs.pydantic.dev/latest/', None),
}

# Shorthand used throughout the API docstrings and guides.
mathjax3_config = {
    'tex': {
        'macros': {
            'TkQ': r'T^1_kQ',
            'XkL': r'\mathfrak{X}^k_L',
            'Liouville': r'\Delta',
        }
    }
}

# -- HTML output -------------------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_options = {
    'prev_next_buttons_location': 'bottom',
    'collapse_navigation': True,
    'navigation_depth': 3,
}

# -- LaTeX output ------------------------------------------------------------

latex_elements = {
    'papersize': 'a4paper',
    'pointsize': '11pt',
    'preamble': r'\usepackage{amsmath,amssymb}',
}
latex_documents = [
    (root_doc, 'ksymplectic.tex', 'k-Symplectic Lagrangian Toolkit', author, 'manual'),
]
man_pages = [
    (root_doc, 'ksym', 'k-symplectic Lagrangian analysis', [author], 1),
]

# -- Coverage ----------------------------------------------------------------

coverage_modules = [
    'ksymplectic',
    'ksymplectic.expr',
    'ksymplectic.geometry',
    'ksymplectic.lagrangian',
    'ksymplectic.sopde',
    'ksymplectic.symmetry',
    'ksymplectic.numverify',
    'ksymplectic.cli',
    'ksymplectic.utils',
]
coverage_ignore_functions = ['main']


def autodoc_skip_member(app, what, name, obj, skip, options):
    """Hide private helpers and every dunder except __init__."""
    if name.startswith('__'):
        return name != '__init__' or skip
    if name.startswith('_'):
        return True
    return skip


def setup(app):
    app.connect('autodoc-skip-member', autodoc_skip_member)
