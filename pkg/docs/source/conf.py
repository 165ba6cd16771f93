# Configuration file for the Sphinx documentation builder.
#
# For the full list of built-in configuration values, see the documentation:
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys

sys.path.insert(0, os.path.abspath("../.."))

from fnls import get_version  # noqa: E402

# -- Project information -----------------------------------------------------

project = 'fnls-lab'
copyright = '2025, fnls-lab developers'
author = 'fnls-lab developers'
release = get_version()

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx_rtd_theme",   # ReadTheDocs Theme
    "myst_parser",        # Markdown Support
    "sphinx.ext.mathjax", # LaTeX Support
    "sphinx.ext.autodoc", # Automatic API Documentation
    "sphinx.ext.viewcode" # Show source code link
]

templates_path = ['_templates']
exclude_patterns = []

source_suffix = {
    '.rst': 'restructuredtext',
    '.md': 'markdown',
}

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"

html_theme_options = {
    "collapse_navigation": False,
    "navigation_depth": 3,
    "style_nav_header_background": "#2a4d69",
}
