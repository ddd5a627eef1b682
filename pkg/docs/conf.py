# hyperdyn documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing dir.
from datetime import datetime

now = datetime.now()

# -- General configuration -----------------------------------------------------

extensions = ["myst_parser"]

templates_path = ["_templates"]

source_suffix = [".rst", ".md"]

master_doc = "index"

project = "hyperdyn"
copyright = f"2026-{now.year}, the hyperdyn developers"

# calendar versioning, kept in step with setup.py
version = "2026.10.17"
release = version

exclude_patterns = ["_build"]

pygments_style = "sphinx"


# -- Options for HTML output ---------------------------------------------------

html_theme = "sphinx_rtd_theme"

html_static_path = ["_static"]

htmlhelp_basename = "hyperdyndoc"


# -- Options for LaTeX output --------------------------------------------------

latex_elements = {}

latex_documents = [
    (
        "index",
        "hyperdyn.tex",
        "hyperdyn Documentation",
        "hyperdyn",
        "manual",
    )
]


# -- Options for manual page output --------------------------------------------

man_pages = [
    (
        "index",
        "hyperdyn",
        "hyperdyn documentation",
        ["the hyperdyn developers"],
        1,
    )
]
