#!/usr/bin/env python3
"""Builds the open-dictionary test fixture from Princeton WordNet 3.0 files.

The WordNet database files ship inside the ``wn==0.0.23`` sdist:

    pip download --no-deps wn==0.0.23 && tar xzf wn-0.0.23.tar.gz
    python3 scripts/make_wordnet_fixture.py \
        --wordnet wn-0.0.23/wn/data/wordnet-3.0 --out tests/data

Outputs (under <out>/wordnet and <out>/toy):
  dict.jsonl       dictionary in the toolkit's JSONL format
  dict.conllu      CoNLL-U sidecar; lemmas from WordNet morphy, heads from a
                   deterministic rule-based attachment (not a trained parser)
  cdv.txt          defining vocabulary: most frequent gloss lemmas
  stopwords.txt    English stop word list
  negators.txt     negator list
  embeddings.txt   headword vectors built from hypernym paths

Everything is deterministic; rerunning produces identical bytes.
"""

import argparse
import collections
import hashlib
import json
import os
import re

import numpy as np

POS_FILES = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}
POS_NAMES = {"n": "noun", "v": "verb", "a": "adj", "r": "adv"}

STOPWORDS = """i me my myself we our ours ourselves you your yours yourself
yourselves he him his himself she her hers herself it its itself they them
their theirs themselves what which who whom this that these those am is are
was were be been being have has had having do does did doing a an the and but
if or because as until while of at by for with about against between into
through during before after above below to from up down in out on off over
under again further then once here there when where why how all any both each
few more most other some such no nor not only own same so than too very s t
can will just don should now d ll m o re ve y ain aren couldn didn doesn hadn
hasn haven isn ma mightn mustn needn shan shouldn wasn weren won wouldn""".split()

NEGATORS = ["not", "no", "never", "nor", "without", "neither", "none", "nothing"]

DET = set("a an the this these those some any each every all no another its his "
          "her their our your my both either neither such".split())
PRON = set("someone something somebody anyone anything everyone everything one "
           "it he she they you i we who which what whom whose itself oneself "
           "themselves him them us me".split())
ADP = set("of in on at by for with from into onto about as over under between "
          "through during without within against among after before around "
          "across along toward towards upon like than via beyond behind below "
          "above near off out up down".split())
CCONJ = set("and or but nor".split())
SCONJ = set("that if because when while although whether whereas where".split())
AUX = set("be is are was were been being am can could will would shall should "
          "may might must do does did has have had".split())
PART = set(["to", "not", "n't", "'s"])

TOKEN_RE = re.compile(r"[^\W_]+(?:[-'][^\W_]+)*")


def tokenize(text):
    out = []
    for m in TOKEN_RE.finditer(text):
        tok = m.group(0)
        low = tok.lower()
        if low.endswith("n't") and len(tok) > 3:
            out += [tok[:-3], tok[-3:]]
        elif low.endswith("'s") and len(tok) > 2:
            out += [tok[:-2], tok[-2:]]
        else:
            out.append(tok)
    return out


class WordNet:
    def __init__(self, root):
        self.root = root
        self.synsets = {}  # (pos, offset) -> dict
        self.index = {}  # (lemma, pos) -> (tagsense_cnt, [offsets])
        self.exc = {p: {} for p in POS_FILES}
        for p, name in POS_FILES.items():
            self._read_data(p, name)
            self._read_index(p, name)
            self._read_exc(p, name)

    def _read_data(self, p, name):
        with open(os.path.join(self.root, "data." + name), encoding="latin-1") as f:
            for line in f:
                if line.startswith("  "):
                    continue
                head, _, gloss = line.partition("|")
                parts = head.split()
                offset = parts[0]
                lexfile = int(parts[1])
                wcnt = int(parts[3], 16)
                words = [parts[4 + 2 * i].lower() for i in range(wcnt)]
                words = [re.sub(r"\(.*\)$", "", w) for w in words]
                k = 4 + 2 * wcnt
                pcnt = int(parts[k])
                hypers = []
                for i in range(pcnt):
                    sym, off, pos = parts[k + 1 + 4 * i: k + 4 + 4 * i]
                    if sym in ("@", "@i"):
                        hypers.append(("a" if pos == "s" else pos, off))
                definition = gloss.strip().split('; "')[0].split('"')[0]
                definition = definition.strip().rstrip(";").strip()
                self.synsets[(p, offset)] = {
                    "words": words,
                    "lexfile": lexfile,
                    "hypers": hypers,
                    "definition": definition,
                }

    def _read_index(self, p, name):
        with open(os.path.join(self.root, "index." + name), encoding="latin-1") as f:
            for line in f:
                if line.startswith("  "):
                    continue
                parts = line.split()
                lemma = parts[0]
                synset_cnt = int(parts[2])
                pcnt = int(parts[3])
                tag = int(parts[5 + pcnt])
                offsets = parts[6 + pcnt: 6 + pcnt + synset_cnt]
                self.index[(lemma, p)] = (tag, offsets)

    def _read_exc(self, p, name):
        with open(os.path.join(self.root, name + ".exc"), encoding="latin-1") as f:
            for line in f:
                parts = line.split()
                if len(parts) >= 2:
                    self.exc[p].setdefault(parts[0], parts[1])

    RULES = {
        "n": [("s", ""), ("ses", "s"), ("xes", "x"), ("zes", "z"), ("ches", "ch"),
              ("shes", "sh"), ("men", "man"), ("ies", "y")],
        "v": [("s", ""), ("ies", "y"), ("es", "e"), ("es", ""), ("ed", "e"),
              ("ed", ""), ("ing", "e"), ("ing", "")],
        "a": [("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
        "r": [],
    }

    def morphy(self, word, pos):
        if word in self.exc[pos]:
            return self.exc[pos][word]
        if (word, pos) in self.index:
            return word
        for suf, rep in self.RULES[pos]:
            if word.endswith(suf) and len(word) > len(suf):
                cand = word[: len(word) - len(suf)] + rep
                if (cand, pos) in self.index:
                    return cand
        return None

    def tag_count(self, lemma, pos):
        return self.index.get((lemma, pos), (-1, []))[0]


def lemmatize(wn, form, hint=None):
    """Returns (lemma, upos) for a gloss token."""
    w = form.lower()
    if w == "n't":
        return "not", "PART"
    if w == "'s":
        return "'s", "PART"
    if w in ("is", "are", "was", "were", "been", "being", "am", "be"):
        return "be", "AUX"
    for closed, upos in ((DET, "DET"), (PRON, "PRON"), (CCONJ, "CCONJ")):
        if w in closed:
            return w, upos
    if w in AUX:
        return wn.morphy(w, "v") or w, "AUX"
    if w in ADP and w != "to":
        return w, "ADP"
    if w in SCONJ:
        return w, "SCONJ"
    if w in ("to", "not"):
        return w, "PART"
    best = None
    order = ["n", "v", "a", "r"]
    if hint in order:
        order.remove(hint)
        order.insert(0, hint)
    for p in order:
        lem = wn.morphy(w, p)
        if lem is None:
            continue
        score = wn.tag_count(lem, p)
        if p == hint:
            score += 3
        if best is None or score > best[0]:
            best = (score, lem, p)
    if best is None:
        if w.isdigit():
            return w, "NUM"
        return w, "X"
    return best[1], {"n": "NOUN", "v": "VERB", "a": "ADJ", "r": "ADV"}[best[2]]


def tag_tokens(wn, forms):
    rows = []
    prev = None
    for f in forms:
        hint = None
        if prev in ("DET", "ADJ"):
            hint = "n"
        elif prev == "PART_TO" or prev == "AUX":
            hint = "v"
        lemma, upos = lemmatize(wn, f, hint)
        rows.append([f, lemma, upos])
        prev = "PART_TO" if f.lower() == "to" else upos
    return rows


PHRASAL = {"NOUN", "VERB", "PRON", "ADJ", "X", "NUM"}
RIGHT_MODS = {"DET": {"NOUN", "PRON", "NUM", "X"},
              "ADJ": {"NOUN", "X"},
              "NUM": {"NOUN"},
              "ADV": {"ADJ", "VERB", "ADV"},
              "ADP": {"NOUN", "PRON", "VERB", "X", "NUM"},
              "AUX": {"VERB", "ADJ"},
              "PART": {"VERB", "ADJ"},
              "CCONJ": PHRASAL,
              "SCONJ": {"VERB", "AUX", "ADJ"}}
BOUNDARY = {"ADP", "CCONJ", "SCONJ", "VERB", "AUX"}


def attach(rows, entry_pos):
    """Rule-based head assignment; returns 1-based heads (0 = root)."""
    n = len(rows)
    upos = [r[2] for r in rows]
    heads = [None] * n
    pref = {"verb": ["VERB"], "noun": ["NOUN", "PRON"],
            "adj": ["VERB", "ADJ", "NOUN"], "adv": ["ADJ", "VERB", "ADV", "NOUN"]}
    root = None
    for cat in pref.get(entry_pos, ["NOUN"]):
        for i in range(n):
            if upos[i] == cat and (i == 0 or upos[i - 1] != "ADP"):
                root = i
                break
        if root is not None:
            break
    if root is None:
        root = next((i for i in range(n) if upos[i] in PHRASAL), 0)
    heads[root] = -1
    # rightward modifiers
    for i in range(n):
        if i == root:
            continue
        targets = RIGHT_MODS.get(upos[i])
        if not targets:
            continue
        for j in range(i + 1, n):
            if upos[j] in targets:
                heads[i] = j
                break
            if upos[i] in ("DET", "ADJ", "NUM") and upos[j] in BOUNDARY:
                break
    # phrase heads attach to the previous phrase head, or the root
    last_head = None
    for i in range(n):
        if i == root:
            last_head = i
            continue
        if heads[i] is not None:
            continue
        if i < root:
            heads[i] = root
        else:
            heads[i] = last_head if last_head is not None else root
            last_head = i
    return [0 if h == -1 else h + 1 for h in heads]


DEPREL = {"DET": "det", "ADJ": "amod", "ADV": "advmod", "ADP": "case",
          "AUX": "aux", "PART": "mark", "CCONJ": "cc", "SCONJ": "mark",
          "NOUN": "nmod", "PRON": "nmod", "VERB": "dep", "NUM": "nummod", "X": "dep"}


def check_tree(heads):
    n = len(heads)
    assert sum(1 for h in heads if h == 0) == 1
    for i in range(n):
        seen = set()
        cur = i + 1
        while cur != 0:
            assert cur not in seen, "cycle"
            seen.add(cur)
            cur = heads[cur - 1]


def conllu_block(sense_id, text, rows, heads):
    lines = [f"# sense_id = {sense_id}", f"# text = {text}"]
    for i, (form, lemma, upos) in enumerate(rows):
        rel = "root" if heads[i] == 0 else DEPREL.get(upos, "dep")
        lines.append("\t".join([str(i + 1), form, lemma, upos, "_", "_",
                                str(heads[i]), rel, "_", "_"]))
    return "\n".join(lines) + "\n\n"


def rng_vector(key, dim):
    seed = int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "little")
    return np.random.default_rng(seed).standard_normal(dim)


def select_entries(wn, n_pairs, max_senses):
    cands = []
    for (lemma, p), (tag, offs) in wn.index.items():
        if not re.fullmatch(r"[a-z]{3,}", lemma) or tag <= 0:
            continue
        cands.append((-tag, lemma, p))
    cands.sort()
    chosen = sorted(cands[:n_pairs], key=lambda c: (c[1], "nvar".index(c[2])))
    entries = []
    for _, lemma, p in chosen:
        offs = wn.index[(lemma, p)][1][:max_senses]
        senses = []
        for k, off in enumerate(offs, 1):
            d = wn.synsets[(p, off)]["definition"]
            if tokenize(d):
                senses.append({"id": f"{lemma}%{POS_NAMES[p]}%{k}", "definition": d,
                               "synset": (p, off)})
        if senses:
            entries.append({"headword": lemma, "pos": POS_NAMES[p], "senses": senses})
    return entries


def hyper_closure(wn, key, depth=8):
    out = []
    frontier = [key]
    for _ in range(depth):
        nxt = []
        for k in frontier:
            out.append(k)
            nxt += wn.synsets.get(k, {}).get("hypers", [])
        frontier = nxt
        if not frontier:
            break
    return out


def write_fixture(wn, entries, outdir, cdv, dim, with_embeddings=True):
    os.makedirs(outdir, exist_ok=True)
    with open(os.path.join(outdir, "dict.jsonl"), "w", encoding="utf-8", newline="\n") as f:
        for e in entries:
            obj = {"headword": e["headword"], "pos": e["pos"],
                   "senses": [{"id": s["id"], "definition": s["definition"]}
                              for s in e["senses"]]}
            f.write(json.dumps(obj, ensure_ascii=False) + "\n")
    with open(os.path.join(outdir, "dict.conllu"), "w", encoding="utf-8", newline="\n") as f:
        f.write("# pipeline = wordnet-morphy-rules@1\n")
        for e in entries:
            for s in e["senses"]:
                rows = tag_tokens(wn, tokenize(s["definition"]))
                heads = attach(rows, e["pos"])
                check_tree(heads)
                f.write(conllu_block(s["id"], s["definition"], rows, heads))
    with open(os.path.join(outdir, "cdv.txt"), "w", encoding="utf-8", newline="\n") as f:
        f.write("# defining vocabulary: most frequent WordNet 3.0 gloss lemmas\n")
        f.write("\n".join(cdv) + "\n")
    with open(os.path.join(outdir, "stopwords.txt"), "w", encoding="utf-8", newline="\n") as f:
        f.write("# English stop words\n" + "\n".join(STOPWORDS) + "\n")
    with open(os.path.join(outdir, "negators.txt"), "w", encoding="utf-8", newline="\n") as f:
        f.write("# negators kept as sememes\n" + "\n".join(NEGATORS) + "\n")
    if not with_embeddings:
        return
    vectors = {}
    for e in entries:
        v = vectors.setdefault(e["headword"], np.zeros(dim))
        for rank, s in enumerate(e["senses"]):
            weight = 1.0 / (1 + rank)
            for depth, key in enumerate(hyper_closure(wn, s["synset"])):
                v += weight * 0.7 ** depth * rng_vector("%s:%s" % key, dim)
            lex = wn.synsets[s["synset"]]["lexfile"]
            v += 0.5 * weight * rng_vector("lex:%d" % lex, dim)
    with open(os.path.join(outdir, "embeddings.txt"), "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{len(vectors)} {dim}\n")
        for w in sorted(vectors):
            v = vectors[w]
            v = v / np.linalg.norm(v)
            f.write(w + " " + " ".join("%.6f" % x for x in v) + "\n")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--wordnet", required=True)
    ap.add_argument("--out", required=True)
    ap.add_argument("--pairs", type=int, default=1400)
    ap.add_argument("--max-senses", type=int, default=3)
    ap.add_argument("--cdv-size", type=int, default=2000)
    ap.add_argument("--dim", type=int, default=32)
    args = ap.parse_args()

    wn = WordNet(args.wordnet)

    freq = collections.Counter()
    for key in sorted(wn.synsets):
        syn = wn.synsets[key]
        for f in tokenize(syn["definition"]):
            lemma, upos = lemmatize(wn, f)
            if re.fullmatch(r"[a-z]+", lemma):
                freq[lemma] += 1
    cdv = [w for w, _ in sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))][: args.cdv_size]
    cdv.sort()

    entries = select_entries(wn, args.pairs, args.max_senses)
    write_fixture(wn, entries, os.path.join(args.out, "wordnet"), cdv, args.dim)
    write_fixture(wn, entries[::len(entries) // 50][:50], os.path.join(args.out, "toy"),
                  cdv, args.dim)
    with open(os.path.join(args.wordnet, "LICENSE"), encoding="latin-1") as f:
        lic = f.read()
    for sub in ("wordnet", "toy"):
        with open(os.path.join(args.out, sub, "LICENSE.wordnet"), "w") as f:
            f.write(lic)
    print("entries", len(entries), "senses", sum(len(e["senses"]) for e in entries))


if __name__ == "__main__":
    main()
