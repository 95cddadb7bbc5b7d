#!/usr/bin/env python3
"""Generate the bundled mini corpus (CoNLL-U) and the mini verb-pair dataset.

The corpus comes from a small verb-argument grammar: every verb is tied to
two noun "topics" so that verbs sharing topics end up distributionally
similar. Output is deterministic for a fixed seed.

Usage: python3 scripts/make_minicorpus.py [outdir]
"""

import random
import sys
from pathlib import Path

SEED = 20160605
N_SENTENCES = 2000

CORE_VERBS = [
    "begin", "acknowledge", "increase", "reduce", "announce", "approve",
    "build", "buy", "sell", "carry", "change", "choose", "claim", "close",
    "collect", "consider", "continue", "create", "cut", "decide", "deliver",
    "demand", "describe", "design", "destroy",
]

TAIL_VERBS = [
    "develop", "discuss", "divide", "draw", "drink", "drive", "drop", "earn",
    "eat", "encourage", "end", "enjoy", "establish", "examine", "expand",
    "expect", "explain", "express", "extend", "face", "fail", "fall", "feed",
    "feel", "fight", "fill", "find", "finish", "fix", "fly", "fold", "follow",
    "force", "forget", "forgive", "form", "gain", "gather", "give", "grab",
    "grow", "guard", "guess", "handle", "hang", "happen", "hate", "heal",
    "hear", "help", "hide", "hit", "hold", "hope", "hunt", "hurt", "identify",
    "ignore", "imagine", "improve", "include", "indicate", "inform", "injure",
    "inspect", "install", "intend", "introduce", "invent", "invest", "invite",
    "involve", "join", "judge", "jump", "keep", "kick", "kill", "kiss",
    "know", "launch", "lead", "learn", "leave", "lend", "lift", "like",
    "limit", "link", "list", "listen", "live", "load", "lock", "look",
    "lose", "love", "maintain", "make", "manage", "mark", "marry", "match",
    "measure", "meet", "melt", "mention", "miss", "mix", "move", "need",
    "notice", "obtain", "occupy", "offer", "open", "operate", "order",
    "organize", "own", "pack", "paint", "pass", "pay", "perform", "persuade",
    "pick", "plan", "plant", "play", "point", "praise", "predict", "prefer",
    "prepare", "present", "press", "prevent", "print", "produce", "promise",
    "promote", "propose", "protect", "prove", "provide", "publish", "pull",
    "punish", "push", "put", "raise", "reach", "read", "realize", "receive",
    "recognize", "recommend", "record", "recover", "refuse", "regard",
    "register", "reject", "release", "remain", "remember", "remind", "remove",
    "repair", "repeat", "replace", "reply", "report", "represent", "require",
    "rescue", "resist", "resolve", "respect", "respond", "restore", "retain",
    "return", "reveal", "review", "reward", "ride", "ring", "rise", "risk",
    "roll", "run", "save", "say", "scan", "search", "secure", "see", "seek",
    "seem", "seize", "send", "serve", "set", "settle", "shake", "share",
    "shift", "shine", "shoot", "shout", "show", "shut", "sign", "sing",
    "sink", "sit", "sleep", "slide", "smell", "smile", "solve", "speak",
    "spend", "split", "spread", "stand", "start", "state", "stay", "steal",
    "stop", "store", "stress", "stretch", "strike", "study", "submit",
    "succeed", "suffer", "suggest", "supply", "support", "suppose",
    "surround", "survive", "suspect", "sustain", "swim", "switch", "take",
    "talk", "teach", "tell", "test", "thank", "think", "throw", "touch",
    "train", "transfer", "transform", "translate", "travel", "treat",
    "trust", "try", "turn", "understand", "unite", "urge", "use", "visit",
    "wait", "walk", "want", "warn", "wash", "watch", "wear", "welcome",
    "win", "wish", "wonder", "work", "write",
][:235]

NOUNS = [
    "dictator", "failure", "operation", "government", "market", "company",
    "report", "plan", "price", "army", "city", "war", "peace", "treaty",
    "election", "president", "minister", "parliament", "economy", "budget",
    "tax", "profit", "loss", "factory", "worker", "union", "strike",
    "contract", "deal", "agreement", "border", "region", "village", "school",
    "student", "teacher", "hospital", "doctor", "patient", "disease", "drug",
    "vaccine", "police", "crime", "court", "judge", "trial", "prison", "law",
    "rule", "reform", "crisis", "debt", "loan", "bank", "currency", "dollar",
    "oil", "gas", "energy", "power", "water", "food", "grain", "harvest",
    "farm", "land", "forest", "river", "mountain", "road", "bridge", "train",
    "plane", "airport", "port", "ship", "cargo", "trade", "export", "import",
    "investment", "share", "stock", "bond", "fund", "investor", "analyst",
    "journalist", "newspaper", "television", "radio", "message", "letter",
    "statement", "speech", "meeting", "summit", "conference", "decision",
    "policy", "program", "project", "system", "network", "computer",
    "software", "satellite", "weapon", "missile", "soldier", "general",
    "battle", "attack", "defense", "victory", "defeat", "refugee", "aid",
    "relief", "storm", "flood", "earthquake", "fire", "damage", "recruit",
    "training", "street", "jury", "deliberation",
][:128]

PROPER = [
    "Rome", "Paris", "London", "Moscow", "Tokyo", "Beijing", "Geneva",
    "Vienna", "Cairo", "Madrid", "Monday", "Tuesday", "Wednesday",
    "Thursday", "Friday", "Saturday", "Sunday",
]

ADJECTIVES = [
    "new", "old", "big", "small", "major", "minor", "foreign", "local",
    "national", "international", "economic", "political", "military",
    "financial", "industrial", "agricultural", "strong", "weak", "high",
    "low", "early", "late", "recent", "former", "future", "central",
    "northern", "southern", "eastern", "western",
]

ADVERBS = [
    "quickly", "slowly", "finally", "recently", "sharply", "steadily",
    "officially", "publicly", "secretly", "strongly", "barely", "nearly",
    "suddenly", "eventually", "immediately", "gradually", "repeatedly",
    "briefly", "formally", "widely",
]

PREPS = ["on", "in", "with", "at", "from", "to", "under", "after"]
DETS = ["the", "a", "this", "its"]
PRONOUNS = ["he", "she", "they", "it"]

N_TOPICS = 8


def verb_surface(lemma, rng):
    r = rng.random()
    if r < 0.55:
        return lemma + "ed" if not lemma.endswith("e") else lemma + "d"
    if r < 0.8:
        return lemma + "s"
    return lemma


class Sent:
    def __init__(self):
        self.rows = []  # (surface, lemma, upos, xpos, head, deprel)

    def add(self, surface, lemma, upos, xpos, head, deprel):
        self.rows.append([surface, lemma, upos, xpos, head, deprel])
        return len(self.rows)  # 1-based id of the added token


def noun_phrase(sent, rng, noun, head_slot, deprel, adj_p=0.25, det_p=0.7,
                proper=False):
    """Appends [det] [adj] noun; returns the noun id. head fixed up later."""
    det_id = adj_id = None
    if not proper and rng.random() < det_p:
        d = rng.choice(DETS)
        det_id = sent.add(d.capitalize() if len(sent.rows) == 0 else d,
                          d, "DET", "DT", 0, "det")
    if not proper and rng.random() < adj_p:
        a = rng.choice(ADJECTIVES)
        adj_id = sent.add(a, a, "ADJ", "JJ", 0, "amod")
    if proper:
        nid = sent.add(noun, noun, "PROPN", "NNP", head_slot, deprel)
    else:
        plural = rng.random() < 0.25
        surf = noun + "s" if plural else noun
        if len(sent.rows) == 0 or (det_id is None and adj_id is None
                                   and len(sent.rows) == 0):
            surf = surf.capitalize()
        nid = sent.add(surf, noun, "NOUN", "NNS" if plural else "NN",
                       head_slot, deprel)
    if det_id:
        sent.rows[det_id - 1][4] = nid
    if adj_id:
        sent.rows[adj_id - 1][4] = nid
    return nid


def prep_phrase(sent, rng, verb_id, topics, topic_nouns, deprel="obl"):
    prep = rng.choice(PREPS)
    pid = sent.add(prep, prep, "ADP", "IN", 0, "case")
    if prep in ("on", "at", "in") and rng.random() < 0.5:
        pn = rng.choice(PROPER)
        nid = sent.add(pn, pn, "PROPN", "NNP", verb_id, deprel)
    else:
        noun = rng.choice(topic_nouns[rng.choice(topics)])
        nid = noun_phrase(sent, rng, noun, verb_id, deprel, det_p=0.5)
    sent.rows[pid - 1][4] = nid
    return nid


def make_sentence(rng, verb, topics, topic_nouns, with_mwt):
    sent = Sent()
    kind = rng.random()
    subj_topic, obj_topic = topics

    if kind < 0.05:  # passive: nsubj:pass + obl:agent
        noun = rng.choice(topic_nouns[obj_topic])
        sid = noun_phrase(sent, rng, noun, 0, "nsubj:pass")
        aux_id = sent.add("was", "be", "AUX", "VBD", 0, "aux:pass")
        vid = sent.add(verb + "d" if verb.endswith("e") else verb + "ed",
                       verb, "VERB", "VBN", 0, "root")
        sent.rows[sid - 1][4] = vid
        sent.rows[aux_id - 1][4] = vid
        by_id = sent.add("by", "by", "ADP", "IN", 0, "case")
        agent = rng.choice(topic_nouns[subj_topic])
        aid = noun_phrase(sent, rng, agent, vid, "obl:agent", det_p=0.8)
        sent.rows[by_id - 1][4] = aid
    elif kind < 0.10:  # imperative: obj (+ obl)
        vid = sent.add(verb.capitalize(), verb, "VERB", "VB", 0, "root")
        noun = rng.choice(topic_nouns[obj_topic])
        noun_phrase(sent, rng, noun, vid, "obj")
        if rng.random() < 0.6:
            prep_phrase(sent, rng, vid, topics, topic_nouns)
    else:
        if rng.random() < 0.08:
            p = rng.choice(PRONOUNS)
            sid = sent.add(p.capitalize(), p, "PRON", "PRP", 0, "nsubj")
        else:
            noun = rng.choice(topic_nouns[subj_topic])
            sid = noun_phrase(sent, rng, noun, 0, "nsubj", adj_p=0.3)
        vid = sent.add(verb_surface(verb, rng), verb, "VERB", "VBD", 0,
                       "root")
        sent.rows[sid - 1][4] = vid
        if kind < 0.25:  # intransitive (+ adverb)
            a = rng.choice(ADVERBS)
            sent.add(a, a, "ADV", "RB", vid, "advmod")
        elif kind < 0.35:  # subj + obl
            prep_phrase(sent, rng, vid, topics, topic_nouns)
        else:  # subj + obj (+ obl) (+ adverb)
            noun = rng.choice(topic_nouns[obj_topic])
            noun_phrase(sent, rng, noun, vid, "obj")
            if kind >= 0.70:
                prep_phrase(sent, rng, vid, topics, topic_nouns)
            if rng.random() < 0.12:
                a = rng.choice(ADVERBS)
                sent.add(a, a, "ADV", "RB", vid, "advmod")

    root = next(i + 1 for i, r in enumerate(sent.rows) if r[5] == "root")
    sent.add(".", ".", "PUNCT", ".", root, "punct")

    lines = []
    mwt_at = rng.randrange(1, len(sent.rows)) if with_mwt else -1
    for i, r in enumerate(sent.rows):
        if i + 1 == mwt_at:
            lines.append("\t".join([f"{i + 1}-{i + 2}",
                                    r[0] + sent.rows[i + 1][0],
                                    "_", "_", "_", "_", "_", "_", "_", "_"]))
        surface, lemma, upos, xpos, head, deprel = r
        lines.append("\t".join([str(i + 1), surface, lemma, upos, xpos, "_",
                                str(head), deprel, "_", "_"]))
    return lines


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data")
    outdir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)

    verbs = CORE_VERBS + TAIL_VERBS
    assert len(verbs) == len(set(verbs)) == 260

    topic_nouns = [NOUNS[i::N_TOPICS] for i in range(N_TOPICS)]
    verb_topics = {v: (i % N_TOPICS, (3 * i + 1) % N_TOPICS)
                   for i, v in enumerate(verbs)}

    with open(outdir / "minicorpus.conllu", "w", encoding="utf-8") as f:
        for n in range(N_SENTENCES):
            verb = (rng.choice(CORE_VERBS) if rng.random() < 0.7
                    else rng.choice(TAIL_VERBS))
            lines = make_sentence(rng, verb, verb_topics[verb], topic_nouns,
                                  with_mwt=rng.random() < 0.02)
            f.write(f"# sent_id = mini-{n + 1}\n")
            f.write("\n".join(lines))
            f.write("\n\n")

    # 40 in-corpus pairs + 2 pairs with verbs absent from the corpus
    pairs = set()
    rows = []
    while len(rows) < 34:
        a, b = rng.sample(CORE_VERBS, 2)
        if (min(a, b), max(a, b)) in pairs:
            continue
        pairs.add((min(a, b), max(a, b)))
        rows.append((a, b, round(rng.uniform(0.0, 10.0), 2)))
    while len(rows) < 40:
        a = rng.choice(CORE_VERBS)
        b = rng.choice(TAIL_VERBS)
        if (min(a, b), max(a, b)) in pairs:
            continue
        pairs.add((min(a, b), max(a, b)))
        rows.append((a, b, round(rng.uniform(0.0, 10.0), 2)))
    rows.append(("yodel", "warble", 5.00))
    rows.append(("begin", "abseil", 1.25))
    with open(outdir / "mini_verbsim.txt", "w", encoding="utf-8") as f:
        for a, b, s in rows:
            f.write(f"{a} {b} {s:.2f}\n")

    print(f"wrote {outdir}/minicorpus.conllu ({N_SENTENCES} sentences) and "
          f"{outdir}/mini_verbsim.txt ({len(rows)} pairs)")


if __name__ == "__main__":
    main()
