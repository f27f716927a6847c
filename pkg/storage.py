"""
Storage Service for Reports and Reproducibility Artifacts

Writes reports as JSON to standard output or a file, and saves/loads the
artifacts behind an estimate (hash families, tree decompositions) so a run
can be audited later.
"""

import json
import sys
from typing import Optional, Union

from pydantic import BaseModel

from errors import InvalidDecompositionError
from hashing import HashFamily
from treewidth import NiceDecomposition, TreeDecomposition


def render_report(report: BaseModel) -> str:
    """JSON text of a report; absent optional fields are omitted."""
    return report.model_dump_json(indent=2, exclude_none=True) + "\n"


def write_report(report: BaseModel, output_path: Optional[str] = None) -> str:
    """
    Write a report to `output_path`, or to standard output when it is None.

    Returns:
        The JSON text written
    """
    text = render_report(report)
    write_text(text, output_path)
    return text


def write_text(text: str, path: Optional[str] = None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


# ============================================================================
# Hash families
# ============================================================================

def save_hash_family(family: HashFamily, path: str) -> None:
    write_text(family.to_json() + "\n", path)


def load_hash_family(path: str) -> HashFamily:
    return HashFamily.from_json(read_text(path))


# ============================================================================
# Tree decompositions
# ============================================================================

def save_decomposition(decomposition: Union[TreeDecomposition, NiceDecomposition], path: str) -> None:
    write_text(decomposition.to_json() + "\n", path)


def load_decomposition(path: str) -> TreeDecomposition:
    """
    Load either JSON layout as a plain TreeDecomposition.

    Plain decompositions list {node, bag, parent}; nice ones list
    {node, type, bag, children}.
    """
    entries = json.loads(read_text(path))
    bags = {}
    parent = {}
    try:
        for entry in entries:
            bags[entry["node"]] = frozenset(entry["bag"])
            if "parent" in entry:
                parent[entry["node"]] = entry["parent"]
            else:
                parent.setdefault(entry["node"], None)
                for child in entry["children"]:
                    parent[child] = entry["node"]
    except (KeyError, TypeError) as e:
        raise InvalidDecompositionError(f"malformed decomposition file {path}: {e}")
    return TreeDecomposition(bags=bags, parent=parent)
