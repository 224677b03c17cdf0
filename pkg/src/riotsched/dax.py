"""Ingestion of the DAX-subset XML workflow description.

Supported constructs: <job> with a runtime attribute, nested <uses> with a
file name, byte size and link direction, and <child>/<parent> dependency
declarations.  Anything else raises UnsupportedFeature instead of being
silently dropped.  Edge bytes between two jobs are the summed sizes of the
files the first writes and the second reads; a file read by several jobs
is charged in full on each edge.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from collections import defaultdict

from .errors import MalformedInput, UnsupportedFeature
from .workflow import DataEdge, Task, Workflow, validate

_SUPPORTED_TOP = {"job", "child"}
# Informational adag children that carry no scheduling semantics.
_IGNORED_TOP = {"filename", "metadata", "invoke"}


def _localname(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def parse_dax(xml_text: str) -> Workflow:
    """Parse a DAX-subset document into a validated workflow."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise MalformedInput(str(exc)) from exc
    if _localname(root.tag) != "adag":
        raise MalformedInput(f"expected <adag> root, got <{_localname(root.tag)}>")

    tasks: list[Task] = []
    writes: dict[str, dict[str, float]] = {}  # job -> file -> bytes
    reads: dict[str, dict[str, float]] = {}
    declared: set[tuple[str, str]] = set()

    for elem in root:
        tag = _localname(elem.tag)
        if tag in _IGNORED_TOP:
            continue
        if tag not in _SUPPORTED_TOP:
            raise UnsupportedFeature(tag)

        if tag == "job":
            job_id = elem.get("id")
            if job_id is None:
                raise MalformedInput("job without id attribute")
            runtime = elem.get("runtime")
            if runtime is None:
                raise MalformedInput(f"job {job_id!r} has no runtime attribute")
            try:
                workload = float(runtime)
            except ValueError:
                raise MalformedInput(f"job {job_id!r}: runtime {runtime!r} is not a number")
            tasks.append(Task(job_id, workload, label=elem.get("name")))
            writes[job_id] = {}
            reads[job_id] = {}
            for child in elem:
                ctag = _localname(child.tag)
                if ctag == "argument":
                    continue
                if ctag != "uses":
                    raise UnsupportedFeature(f"job/{ctag}")
                fname = child.get("file") or child.get("name")
                if fname is None:
                    raise MalformedInput(f"job {job_id!r}: <uses> without file name")
                link = child.get("link", "input")
                try:
                    size = float(child.get("size", "0"))
                except ValueError:
                    raise MalformedInput(f"job {job_id!r}: bad size on file {fname!r}")
                if link == "output":
                    writes[job_id][fname] = size
                elif link == "input":
                    reads[job_id][fname] = size
                else:
                    raise UnsupportedFeature(f"uses link={link!r}")

        else:  # child
            child_ref = elem.get("ref")
            if child_ref is None:
                raise MalformedInput("<child> without ref attribute")
            for parent in elem:
                if _localname(parent.tag) != "parent":
                    raise UnsupportedFeature(f"child/{_localname(parent.tag)}")
                parent_ref = parent.get("ref")
                if parent_ref is None:
                    raise MalformedInput("<parent> without ref attribute")
                declared.add((parent_ref, child_ref))

    # File-implied dependencies: writer precedes every reader.
    file_writers = defaultdict(list)
    for job, files in writes.items():
        for fname in files:
            file_writers[fname].append(job)
    implied = set()
    for job, files in reads.items():
        for fname in files:
            for writer in file_writers.get(fname, ()):
                if writer != job:
                    implied.add((writer, job))

    edges = []
    for u, v in sorted(declared | implied):
        shared = writes.get(u, {}).keys() & reads.get(v, {}).keys()
        nbytes = sum(writes[u][f] for f in shared)
        edges.append(DataEdge(u, v, nbytes))
    return validate(tasks, edges)
