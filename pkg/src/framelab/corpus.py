"""Corpus generation and persistence.

A corpus holds one entry per isomorphism class of posets up to a size bound,
each with its upset lattice and dual space precomputed. Entry ids are content
hashes of the canonical poset serialization, so regeneration with the same
parameters is byte-identical and reports stay diffable.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from . import config
from .duality import poset_content_id, priestley_space_of
from .errors import CapacityError
from .lattices import birkhoff_lattice
from .posets import Poset, enumerate_posets


@dataclass(frozen=True)
class CorpusEntry:
    entry_id: str
    poset: Poset
    lattice: object
    record: object

    @property
    def space(self):
        return self.record.space


@dataclass(frozen=True)
class Corpus:
    max_size: int
    entries: tuple
    manifest: dict

    def lattices(self):
        return [e.lattice for e in self.entries]

    def __len__(self):
        return len(self.entries)


def gen_corpus(max_size=5, size_cap=None):
    """One entry per isomorphism class of posets of size 0..max_size."""
    cap = config.MAX_POSET_SIZE if size_cap is None else size_cap
    if max_size > cap:
        raise CapacityError(f"corpus size {max_size} exceeds the configured cap {cap}")
    entries = []
    for n in range(max_size + 1):
        for poset in enumerate_posets(n):
            lattice = birkhoff_lattice(poset)
            record = priestley_space_of(lattice)
            entries.append(
                CorpusEntry(poset_content_id(poset), poset, lattice, record)
            )
    manifest = {
        "max_size": max_size,
        "count": len(entries),
        "hash": _corpus_hash(entries),
    }
    return Corpus(max_size, tuple(entries), manifest)


def _corpus_hash(entries):
    payload = json.dumps(
        [e.entry_id for e in entries], separators=(",", ":")
    ).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def corpus_to_json(corpus):
    doc = {
        "manifest": corpus.manifest,
        "entries": [
            {"id": e.entry_id, "poset": e.poset.to_doc()} for e in corpus.entries
        ],
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def corpus_from_json(text):
    doc = json.loads(text)
    if not isinstance(doc, dict) or "entries" not in doc or "manifest" not in doc:
        raise ValueError("not a corpus document")
    entries = []
    for item in doc["entries"]:
        poset = Poset.from_doc(item["poset"])
        lattice = birkhoff_lattice(poset)
        record = priestley_space_of(lattice)
        entry = CorpusEntry(item["id"], poset, lattice, record)
        if poset_content_id(poset) != entry.entry_id:
            raise ValueError(f"corpus entry {entry.entry_id} fails its content hash")
        entries.append(entry)
    manifest = doc["manifest"]
    if manifest.get("hash") != _corpus_hash(entries):
        raise ValueError("corpus manifest hash does not match the entries")
    return Corpus(manifest.get("max_size", -1), tuple(entries), manifest)


def save_corpus(corpus, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(corpus_to_json(corpus))


def load_corpus(path):
    with open(path, "r", encoding="utf-8") as fh:
        return corpus_from_json(fh.read())
