"""Exact p-block and character-height computations for finite groups.

The heavy lifting lives in the C++ extension ``_blockheight``; this package
adds JSON decoding so reports come back as plain dicts.
"""

import json
import os
import sys

try:
    from ._blockheight import *  # noqa: F401,F403
    from . import _blockheight as _ext
except ImportError:  # in-tree test runs: extension next to the build dir
    _ext_dir = os.environ.get("BLOCKHEIGHT_EXT_DIR")
    if not _ext_dir:
        raise
    sys.path.insert(0, _ext_dir)
    from _blockheight import *  # noqa: F401,F403
    import _blockheight as _ext

__all__ = [
    "group", "load_group", "load_table_json", "metacyclic", "wreath",
    "mh_pgroup", "hook_lengths", "degree_sn", "ell_core", "is_ell_core",
    "core_existence", "wreath_degree", "check_unipdef", "run_corpus",
    "character_table", "block_partition", "verify_em", "corpus_report",
]


def character_table(g):
    """Character table of a Group as a dict (see the table file format)."""
    return json.loads(g.character_table_json())


def block_partition(g, p):
    """p-block partition of a Group as a dict."""
    return json.loads(g.block_partition_json(p))


def verify_em(g, p):
    """Eaton-Moreto comparison report for a Group as a dict."""
    return json.loads(g.verify_em_json(p))


def corpus_report(directory, workers=4):
    """Aggregate corpus report as a dict."""
    return json.loads(_ext.run_corpus(directory, workers))
