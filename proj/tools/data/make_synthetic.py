#!/usr/bin/env python3
# Copyright 2026 The cliff Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled synthetic corpus under data/synthetic/.

Twenty wildlife-rescue news items, each with a four-sentence source and a
one-sentence reference, annotated in CoNLL-U (UPOS, heads, relations,
NER=/NP= in MISC). Also writes decoder beams, error-annotated outputs, a per-output metric
table and a synonym list. Output is a pure function of SEED.
"""
import json
import os
import random

SEED = 20260101
N_DOCS = 20

GPE = ["Flintshire", "Bettisfield", "South Yorkshire", "Nottinghamshire", "Somerset",
       "London", "Lancashire", "Cardiff", "Glasgow", "Leeds", "Devon", "Norfolk",
       "Cumbria", "Belfast", "Swansea", "Kent", "Dorset", "Wrexham", "North Wales",
       "West Sussex"]
ORG = ["RSPCA", "National Trust", "Met Office", "Network Rail", "Environment Agency",
       "Natural England", "Wildlife Trust", "Royal Mail"]
PERSON = ["John Smith", "Sarah Jones", "David Evans", "Emma Brown", "Wayne Rooney",
          "Helen Clark", "Peter Hughes", "Alice Moore", "Tom Davies", "Rachel Green",
          "Owen Price", "Megan Lloyd"]
DAYS = ["Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"]
ANIMALS = ["owl", "hedgehog", "otter", "badger", "swan", "kestrel", "seal", "fox",
           "heron", "tortoise"]
ADJS = ["short-eared", "young", "injured", "tiny", "elderly"]
GRAMS = ["300", "450", "1,250", "800", "95", "2,000"]
YEARS = ["1998", "2004", "1987", "2011", "1979"]

# Template rows: (key, form or {SLOT}, upos, head key or None for root, deprel, np)
# where np is "B", "I" or "" and applies to every token a slot expands to.
S1 = [
    ("t1", "The", "DET", "animal", "det", "B"),
    ("animal", "{ANIMAL}", "NOUN", "found", "nsubj:pass", "I"),
    ("was", "was", "AUX", "found", "aux:pass", ""),
    ("found", "found", "VERB", None, "root", ""),
    ("ema", "emaciated", "ADJ", "found", "xcomp", ""),
    ("in", "in", "ADP", "gpe1", "case", "B"),
    ("gpe1", "{GPE1}", "PROPN", "found", "obl", "I"),
    ("on", "on", "ADP", "day", "case", "B"),
    ("day", "{DAY}", "PROPN", "found", "obl", "I"),
    ("by", "by", "ADP", "per1", "case", "B"),
    ("per1", "{PERSON1}", "PROPN", "found", "obl:agent", "I"),
    ("p", ".", "PUNCT", "found", "punct", ""),
]
S2 = [
    ("per1", "{PERSON1}", "PROPN", "took", "nsubj", "B"),
    ("took", "took", "VERB", None, "root", ""),
    ("the", "the", "DET", "animal", "det", "B"),
    ("animal", "{ANIMAL}", "NOUN", "took", "obj", "I"),
    ("to", "to", "ADP", "centre", "case", "B"),
    ("a", "a", "DET", "centre", "det", "I"),
    ("org1", "{ORG1}", "PROPN", "centre", "compound", "I"),
    ("centre", "centre", "NOUN", "took", "obl", "I"),
    ("near", "near", "ADP", "gpe2", "case", "B"),
    ("gpe2", "{GPE2}", "PROPN", "centre", "nmod", "I"),
    ("p", ".", "PUNCT", "took", "punct", ""),
]
S3 = [
    ("staff", "Staff", "NOUN", "said", "nsubj", "B"),
    ("at", "at", "ADP", "org1", "case", "B"),
    ("the", "the", "DET", "org1", "det", "I"),
    ("org1", "{ORG1}", "PROPN", "staff", "nmod", "I"),
    ("said", "said", "VERB", None, "root", ""),
    ("the2", "the", "DET", "animal", "det", "B"),
    ("animal", "{ANIMAL}", "NOUN", "rec", "nsubj", "I"),
    ("was", "was", "AUX", "rec", "aux", ""),
    ("q1", "``", "PUNCT", "rec", "punct", ""),
    ("rec", "recovering", "VERB", "said", "ccomp", ""),
    ("well", "well", "ADV", "rec", "advmod", ""),
    ("q2", "''", "PUNCT", "rec", "punct", ""),
    ("and", "and", "CCONJ", "weighs", "cc", ""),
    ("weighs", "weighs", "VERB", "rec", "conj", ""),
    ("num", "{GRAMS}", "NUM", "grams", "nummod", "B"),
    ("grams", "grams", "NOUN", "weighs", "obj", "I"),
    ("p", ".", "PUNCT", "said", "punct", ""),
]
S4 = [
    ("it", "It", "PRON", "sighting", "nsubj", ""),
    ("is", "is", "AUX", "sighting", "cop", ""),
    ("the", "the", "DET", "sighting", "det", "B"),
    ("first", "first", "ADJ", "sighting", "amod", "I"),
    ("sighting", "sighting", "NOUN", None, "root", "I"),
    ("in", "in", "ADP", "gpe3", "case", "B"),
    ("gpe3", "{GPE3}", "PROPN", "sighting", "nmod", "I"),
    ("since", "since", "ADP", "year", "case", "B"),
    ("year", "{YEAR}", "NUM", "sighting", "nmod", "I"),
    ("c", ",", "PUNCT", "acc", "punct", ""),
    ("acc", "according", "VERB", "sighting", "advcl", ""),
    ("to", "to", "ADP", "per2", "case", "B"),
    ("per2", "{PERSON2}", "PROPN", "acc", "obl", "I"),
    ("p", ".", "PUNCT", "sighting", "punct", ""),
]
R1 = [
    ("a", "A", "DET", "animal", "det", "B"),
    ("q1", "``", "PUNCT", "rare", "punct", "I"),
    ("rare", "rare", "ADJ", "animal", "amod", "I"),
    ("q2", "''", "PUNCT", "rare", "punct", "I"),
    ("adj", "{ADJ}", "ADJ", "animal", "amod", "I"),
    ("animal", "{ANIMAL}", "NOUN", "rec", "nsubj", "I"),
    ("found", "found", "VERB", "animal", "acl", ""),
    ("ema", "emaciated", "ADJ", "found", "xcomp", ""),
    ("in", "in", "ADP", "gpe1", "case", "B"),
    ("gpe1", "{GPE1}", "PROPN", "found", "obl", "I"),
    ("is", "is", "AUX", "rec", "aux", ""),
    ("now", "now", "ADV", "rec", "advmod", ""),
    ("rec", "recuperating", "VERB", None, "root", ""),
    ("well", "well", "ADV", "rec", "advmod", ""),
    ("c", ",", "PUNCT", "said", "punct", ""),
    ("the", "the", "DET", "org1", "det", "B"),
    ("org1", "{ORG1}", "PROPN", "said", "nsubj", "I"),
    ("have", "have", "AUX", "said", "aux", ""),
    ("said", "said", "VERB", "rec", "parataxis", ""),
    ("p", ".", "PUNCT", "rec", "punct", ""),
]
R2 = [
    ("per1", "{PERSON1}", "PROPN", "found", "nsubj", "B"),
    ("found", "found", "VERB", None, "root", ""),
    ("the", "the", "DET", "animal", "det", "B"),
    ("animal", "{ANIMAL}", "NOUN", "found", "obj", "I"),
    ("in", "in", "ADP", "gpe1", "case", "B"),
    ("gpe1", "{GPE1}", "PROPN", "found", "obl", "I"),
    ("and", "and", "CCONJ", "took", "cc", ""),
    ("took", "took", "VERB", "found", "conj", ""),
    ("it", "it", "PRON", "took", "obj", ""),
    ("to", "to", "ADP", "org1", "case", "B"),
    ("the2", "the", "DET", "org1", "det", "I"),
    ("org1", "{ORG1}", "PROPN", "took", "obl", "I"),
    ("near", "near", "ADP", "gpe2", "case", "B"),
    ("gpe2", "{GPE2}", "PROPN", "org1", "nmod", "I"),
    ("p", ".", "PUNCT", "found", "punct", ""),
]
R3 = [
    ("a", "A", "DET", "animal", "det", "B"),
    ("animal", "{ANIMAL}", "NOUN", "weighs", "nsubj", "I"),
    ("resc", "rescued", "VERB", "animal", "acl", ""),
    ("in", "in", "ADP", "gpe1", "case", "B"),
    ("gpe1", "{GPE1}", "PROPN", "resc", "obl", "I"),
    ("on", "on", "ADP", "day", "case", "B"),
    ("day", "{DAY}", "PROPN", "resc", "obl", "I"),
    ("weighs", "weighs", "VERB", None, "root", ""),
    ("just", "just", "ADV", "num", "advmod", ""),
    ("num", "{GRAMS}", "NUM", "grams", "nummod", "B"),
    ("grams", "grams", "NOUN", "weighs", "obj", "I"),
    ("c", ",", "PUNCT", "says", "punct", ""),
    ("says", "says", "VERB", "weighs", "parataxis", ""),
    ("per2", "{PERSON2}", "PROPN", "says", "nsubj", "B"),
    ("p", ".", "PUNCT", "weighs", "punct", ""),
]

SLOT_TYPES = {"GPE1": "GPE", "GPE2": "GPE", "GPE3": "GPE", "ORG1": "ORG",
              "PERSON1": "PERSON", "PERSON2": "PERSON", "DAY": "DATE", "YEAR": "DATE",
              "GRAMS": "CARDINAL"}


def expand(template, fill):
    """Returns rows (form, upos, head, deprel, misc) with 1-based heads."""
    spans = {}
    rows = []
    for key, form, upos, head, rel, np in template:
        if form.startswith("{"):
            slot = form[1:-1]
            words = fill[slot].split()
        else:
            slot = None
            words = [form]
        start = len(rows)
        for i, w in enumerate(words):
            misc = []
            if slot in SLOT_TYPES:
                misc.append("NER=%s-%s" % ("B" if i == 0 else "I", SLOT_TYPES[slot]))
            if np:
                misc.append("NP=%s" % (np if i == 0 else "I"))
            rows.append([w, upos, None, rel, misc, key])
        spans[key] = (start, len(rows))
    for key, form, upos, head, rel, np in template:
        start, end = spans[key]
        last = end - 1
        for i in range(start, end):
            if i < last:
                rows[i][2] = last + 1
                rows[i][3] = "flat" if SLOT_TYPES.get(form[1:-1]) == "PERSON" else "compound"
            else:
                rows[i][2] = 0 if head is None else spans[head][1]
    return rows


def conllu(rows, sent_id, meta):
    lines = ["# %s" % m for m in meta]
    lines.append("# sent_id = %s" % sent_id)
    lines.append("# text = %s" % " ".join(r[0] for r in rows))
    for i, (form, upos, head, rel, misc, _) in enumerate(rows, 1):
        lines.append("\t".join([str(i), form, form.lower(), upos, "_", "_", str(head), rel, "_",
                                "|".join(misc) if misc else "_"]))
    return "\n".join(lines) + "\n\n"


def main():
    rng = random.Random(SEED)
    root = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "..", "data", "synthetic")
    os.makedirs(root, exist_ok=True)

    docs = []
    out = []
    refs = [R1, R2, R3]
    for d in range(N_DOCS):
        doc_id = "doc%02d" % (d + 1)
        g = rng.sample(GPE, 3)
        p = rng.sample(PERSON, 2)
        fill = {"GPE1": g[0], "GPE2": g[1], "GPE3": g[2], "ORG1": rng.choice(ORG),
                "PERSON1": p[0], "PERSON2": p[1], "DAY": rng.choice(DAYS),
                "YEAR": rng.choice(YEARS), "GRAMS": rng.choice(GRAMS),
                "ANIMAL": ANIMALS[d % len(ANIMALS)], "ADJ": rng.choice(ADJS)}
        src = [expand(t, fill) for t in (S1, S2, S3, S4)]
        ref = expand(refs[d % 3], fill)
        for i, rows in enumerate(src):
            meta = ["newdoc id = %s" % doc_id, "part = source"] if i == 0 else []
            out.append(conllu(rows, "%s-s%d" % (doc_id, i + 1), meta))
        out.append(conllu(ref, "%s-r1" % doc_id, ["part = reference"]))
        docs.append((doc_id, fill, ref))

    with open(os.path.join(root, "corpus.conllu"), "w") as f:
        f.write("".join(out))

    # Beams: untagged tokens; beam 0 is the reference verbatim with confident
    # probabilities, later beams swap in an unseen entity at low confidence.
    with open(os.path.join(root, "beams.jsonl"), "w") as f:
        for doc_id, fill, ref in docs:
            beams = []
            for rank in range(4):
                toks, probs = [], []
                swap_slot = {1: "GPE1", 2: "PERSON1", 3: "GRAMS"}.get(rank)
                for form, upos, head, rel, misc, key in ref:
                    toks.append(form)
                    probs.append(round(rng.uniform(0.55, 0.99), 4))
                if swap_slot and fill.get(swap_slot):
                    old = fill[swap_slot].split()
                    pool = {"GPE1": GPE, "PERSON1": PERSON, "GRAMS": GRAMS}[swap_slot]
                    new = rng.choice([x for x in pool if x != fill[swap_slot]]).split()
                    for i in range(len(toks) - len(old) + 1):
                        if toks[i:i + len(old)] == old:
                            toks[i:i + len(old)] = new
                            probs[i:i + len(old)] = [round(rng.uniform(0.02, 0.45), 4)] + \
                                [round(rng.uniform(0.5, 0.95), 4) for _ in new[1:]]
                            break
                beams.append({"rank": rank, "tokens": toks, "probs": probs})
            f.write(json.dumps({"doc_id": doc_id, "beams": beams}) + "\n")

    # Annotated outputs: two per document. Error spans replace the entity:
    # extrinsic errors bring in an entity from outside the document,
    # intrinsic ones reuse another same-type entity of its source, and
    # world-knowledge spans keep the surface but are labeled.
    pools = {"GPE": GPE, "PERSON": PERSON, "ORG": ORG, "DATE": DAYS, "CARDINAL": GRAMS}
    metrics = ["doc_id\tfaithfulness"]
    with open(os.path.join(root, "outputs.jsonl"), "w") as f:
        for doc_id, fill, ref in docs:
            source_values = {}
            for slot, etype in SLOT_TYPES.items():
                source_values.setdefault(etype, set()).add(fill[slot])
            for variant in range(2):
                toks, probs, errors = [], [], []
                i = 0
                while i < len(ref):
                    r = ref[i]
                    misc = "|".join(r[4])
                    if "NER=B-" not in misc:
                        toks.append({"surface": r[0], "upos": r[1]})
                        probs.append(round(rng.uniform(0.4, 0.99), 4))
                        i += 1
                        continue
                    etype = misc.split("NER=B-")[1].split("|")[0]
                    end = i + 1
                    while end < len(ref) and "NER=I-" in "|".join(ref[end][4]):
                        end += 1
                    words = [x[0] for x in ref[i:end]]
                    upos = ref[i][1]
                    kind = rng.choice(["extrinsic", "intrinsic", "world_knowledge", None, None])
                    if variant == 0 and kind != "extrinsic":
                        kind = None
                    if kind == "intrinsic":
                        others = sorted(v for v in source_values[etype] if v != " ".join(words))
                        if others:
                            words = rng.choice(others).split()
                        else:
                            kind = "extrinsic"
                    if kind == "extrinsic":
                        outside = [v for v in pools[etype] if v not in source_values[etype]]
                        words = rng.choice(outside).split()
                    start = len(toks)
                    for w in words:
                        toks.append({"surface": w, "upos": upos})
                        probs.append(round(rng.uniform(0.5, 0.99), 4))
                    if kind is not None:
                        lo, hi = {"extrinsic": (0.02, 0.3), "intrinsic": (0.1, 0.6),
                                  "world_knowledge": (0.5, 0.95)}[kind]
                        probs[start] = round(rng.uniform(lo, hi), 4)
                        errors.append({"start": start, "end": len(toks),
                                       "kind": kind.capitalize() if rng.random() < 0.2 else kind})
                    i = end
                f.write(json.dumps({"doc_id": doc_id, "tokens": toks, "probs": probs,
                                    "errors": errors}) + "\n")
                covered = set()
                for e in errors:
                    if e["kind"].lower() != "world_knowledge":
                        covered.update(range(e["start"], e["end"]))
                score = 1.0 - 0.9 * len(covered) / len(toks) + rng.gauss(0.0, 0.03)
                metrics.append("%s\t%.4f" % (doc_id, min(1.0, max(0.0, score))))

    with open(os.path.join(root, "metrics.tsv"), "w") as f:
        f.write("\n".join(metrics) + "\n")

    with open(os.path.join(root, "synonyms.tsv"), "w") as f:
        f.write("# one synonym group per line, tab-separated\n")
        for group in (["found", "discovered"], ["took", "carried"], ["rare", "unusual"],
                      ["owl", "bird"], ["emaciated", "starving"], ["centre", "center"],
                      ["recuperating", "recovering"], ["staff", "workers"]):
            f.write("\t".join(group) + "\n")


if __name__ == "__main__":
    main()
