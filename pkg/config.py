"""
Configuration file for the coxsplit toolkit
Contains resource caps, search bounds, exit codes and CLI vocabularies
"""

import os
from dotenv import load_dotenv

load_dotenv()

# Resource caps
# Every enumeration in the engines is bounded and hitting a cap raises
# ResourceBoundExceeded instead of returning a partial answer
DEFAULT_CAPS = {
    "generators": 16,       # subset scans over S walk all 2^|S| subsets
    "length": 64,           # longest word the word engine accepts
    "closure": 200_000,     # largest braid closure explored for a single word
    "memo": 1_000_000,      # LRU entries of reduced words kept per system
    "order": 1024,          # largest finite special subgroup enumerated
}

# Fallback for --caps, same key=value,key=value syntax
CAPS_ENV_VAR = "COXSPLIT_CAPS"
COXSPLIT_CAPS = os.getenv(CAPS_ENV_VAR, "")

# Geodesic length of conjugators tried when n(G) needs a conjugacy search
DEFAULT_SEARCH_BOUND = 6

# Distinct decompositions visited while exploring all maximal traces
DEFAULT_STATE_CAP = 50_000

# m(s,t) = infinity is written as 0 in system JSON files
INFINITY_MARKER = 0

# Exit statuses of the CLI
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_FINDINGS = 2
EXIT_RESOURCE_BOUND = 3

COMMANDS = (
    "analyze",
    "word",
    "decompose",
    "validate",
    "measure",
    "certify",
    "export",
    "corpus",
)

OUTPUT_FORMATS = ("json", "text", "dot")
GOG_EXPORT_FORMATS = ("dot", "json")

# Bundled systems written by the corpus command
CORPUS_FILES = {
    "sysA": "sysA.json",
    "sysB": "sysB.json",
    "sysC": "sysC.json",
    "sysD": "sysD.json",
    "dinf": "dinf.json",
    "a2": "a2.json",
    "a3": "a3.json",
    "b2": "b2.json",
}
