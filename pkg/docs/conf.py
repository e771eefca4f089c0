#
# Configuration file for the Sphinx documentation builder.
#
# https://www.sphinx-doc.org/en/master/config
#
import os
import sys
from typing import List

sys.path.insert(0, os.path.abspath(".."))

# -- Project information -----------------------------------------------------

project = "torus-reduction"
copyright = "2023, torus-reduction developers"
author = "torus-reduction developers"
extensions = [
    "myst_parser",
    "sphinx_click",
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.napoleon",
    "sphinx.ext.mathjax",
    "sphinx_rtd_theme",
]
autosummary_generate = True
autodoc_member_order = "bysource"

templates_path = ["_templates"]
exclude_patterns: List[str] = ["_build", ".DS_Store"]

source_suffix = [".rst", ".md"]
master_doc = "index"

# -- Options for HTML output -------------------------------------------------

html_theme = "sphinx_rtd_theme"
html_baseurl = f"/{project}/"

# Method docs link into modules that only exist after autodoc has run.
myst_all_links_external = True
myst_enable_extensions = ["dollarmath"]
