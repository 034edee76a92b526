#!/usr/bin/env python3
"""Regenerate data/minicorpus: 3 writers, 6 stories, rosters and resources.

Female characters are mentioned far more often than male characters, so the
female weight share exceeds the male share in every story.

    python3 tools/make_minicorpus.py [out_dir]
"""
import random
import sys
from pathlib import Path

WRITERS = [
    ("ab", "Amal Bose", "AB", 1900, 1930),
    ("cd", "Chhaya Das", "CD", 1935, 1965),
    ("eg", "Esha Ghosh", "EG", 1970, 2005),
]

THEMES = {
    "ab": ["village", "river", "harvest", "paddy", "boat", "monsoon", "field", "temple"],
    "cd": ["protest", "freedom", "meeting", "leaflet", "police", "prison", "slogan", "march"],
    "eg": ["letter", "garden", "music", "train", "city", "college", "song", "window"],
}

POSITIVE = ["good", "happy", "kind", "bright", "warm", "gentle"]
NEGATIVE = ["sad", "angry", "cruel", "dark", "bitter", "afraid"]
NEUTRAL = ["quiet", "old", "long", "small", "near", "early"]
VERBS = ["went", "said", "looked", "walked", "spoke", "came"]

# (id, name, aliases, gender, age, role, family, mention probability)
STORIES = [
    dict(id="ab1", title="The Ferry at Dusk", writer="ab", year=1905, genres=["social"], chapters=[34, 42, 30], seed=11,
         cast=[("maya", "Maya", ["Maya", "Mayadevi"], "female", "A2", "protagonist", "mother", 0.42),
               ("rina", "Rina", ["Rina"], "female", "A1", "regular", None, 0.30),
               ("kamala", "Kamala", ["Kamala"], "female", "A3", "regular", "aunt", 0.22),
               ("hari", "Hari", ["Hari", "Uncle Hari"], "male", "A3", "antagonist", "uncle", 0.09),
               ("gopal", "Gopal", ["Gopal"], "male", "A2", "regular", None, 0.07),
               ("bipin", "Bipin", ["Bipin"], "male", "A1", "regular", "brother", 0.0)]),
    dict(id="ab2", title="Monsoon Fields", writer="ab", year=1921, genres=["social", "romantic"], chapters=[40, 36],
         seed=12,
         cast=[("lila", "Lila", ["Lila"], "female", "A1", "protagonist", None, 0.40),
               ("sarala", "Sarala", ["Sarala"], "female", "A3", "regular", "mother", 0.32),
               ("nitai", "Nitai", ["Nitai"], "male", "A2", "regular", "father", 0.10),
               ("jadu", "Jadu", ["Jadu"], "male", "A1", "regular", None, 0.08)]),
    dict(id="cd1", title="Leaflets", writer="cd", year=1940, genres=["political"], chapters=[38, 44, 32], seed=21,
         cast=[("anima", "Anima", ["Anima"], "female", "A2", "protagonist", None, 0.40),
               ("parul", "Parul", ["Parul"], "female", "A1", "regular", None, 0.28),
               ("tarak", "Tarak", ["Tarak"], "male", "A2", "antagonist", None, 0.10),
               ("naren", "Naren", ["Naren"], "male", "A3", "regular", "father", 0.08),
               ("sudhir", "Sudhir", ["Sudhir"], "male", "A1", "regular", "brother", 0.06)]),
    dict(id="cd2", title="The Old Fort", writer="cd", year=1958, genres=["historical", "political"], chapters=[46, 40],
         seed=22,
         cast=[("durga", "Durga", ["Durga"], "female", "A3", "protagonist", "mother", 0.38),
               ("bela", "Bela", ["Bela"], "female", "A2", "regular", None, 0.30),
               ("mohan", "Mohan", ["Mohan"], "male", "A2", "regular", None, 0.09),
               ("ramen", "Ramen", ["Ramen"], "male", "A1", "regular", "brother", 0.08)],
         co_protagonists=False),
    dict(id="eg1", title="Letters from the City", writer="eg", year=1978, genres=["romantic"], chapters=[36, 36, 40],
         seed=31,
         cast=[("tania", "Tania", ["Tania"], "female", "A1", "protagonist", None, 0.40),
               ("ruma", "Ruma", ["Ruma"], "female", "A2", "protagonist", "aunt", 0.34),
               ("amit", "Amit", ["Amit"], "male", "A1", "regular", None, 0.10),
               ("sekhar", "Sekhar", ["Sekhar"], "male", "A3", "antagonist", "father", 0.07)],
         co_protagonists=True),
    dict(id="eg2", title="বৃষ্টির দিন", writer="eg", year=1999, genres=["social"], chapters=[40, 38], seed=32,
         bengali=True,
         cast=[("maya_b", "মায়া", ["মায়া"], "female", "A2", "protagonist", "mother", 0.40),
               ("rina_b", "রিনা", ["রিনা"], "female", "A1", "regular", None, 0.30),
               ("arun_b", "অরুণ", ["অরুণ"], "male", "A3", "regular", "father", 0.09),
               ("bikash_b", "বিকাশ", ["বিকাশ"], "male", "A2", "antagonist", None, 0.07)]),
]

BN_THEME = ["চিঠি", "বাগান", "গান", "ট্রেন", "শহর", "কলেজ", "বৃষ্টি", "নদী"]
BN_POSITIVE = ["ভালো", "সুখী"]
BN_NEGATIVE = ["দুঃখী", "রাগী"]
BN_NEUTRAL = ["চুপচাপ", "পুরনো"]
BN_SUFFIXES = ["ের", "র", "কে"]


def english_sentence(rng, names, theme):
    words = []
    topic = rng.sample(theme, 2)
    r = rng.random()
    mood = rng.choice(POSITIVE if r < 0.35 else NEGATIVE if r < 0.65 else NEUTRAL)
    if rng.random() < 0.1:
        mood = "not " + mood
    if names:
        subject = " and ".join(names)
        form = rng.random()
        if form < 0.15:
            return f'{subject} {rng.choice(VERBS)}, "The {topic[0]} is {mood}!"'
        words = [subject, rng.choice(VERBS), "to", "the", topic[0], "and", "the", topic[1], "was", mood]
    else:
        words = ["The", topic[0], "near", "the", topic[1], "was", mood]
    return " ".join(words) + rng.choice([".", ".", ".", "?"])


def bengali_sentence(rng, names, _theme):
    topic = rng.sample(BN_THEME, 2)
    r = rng.random()
    mood = rng.choice(BN_POSITIVE if r < 0.35 else BN_NEGATIVE if r < 0.65 else BN_NEUTRAL)
    if names:
        parts = []
        for i, n in enumerate(names):
            suffix = ""
            if i == 0 and rng.random() < 0.3:
                suffix = rng.choice(["ের", "কে"] if n[-1] in "ণশ" else ["র", "কে"])
            parts.append(n + suffix)
        return " এবং ".join(parts) + f" {topic[0]} {topic[1]} দেখে {mood} হল।"
    return f"{topic[0]} {topic[1]} {mood} ছিল।"


def chapter_text(rng, story, length):
    sentences = []
    bengali = story.get("bengali", False)
    for _ in range(length):
        names = []
        for cid, name, aliases, *_rest, p in story["cast"]:
            if rng.random() < p:
                names.append(rng.choice(aliases))
        rng.shuffle(names)
        make = bengali_sentence if bengali else english_sentence
        sentences.append(make(rng, names, THEMES[story["writer"]]))
    # Wrap into short paragraphs.
    lines = []
    for i in range(0, len(sentences), 4):
        lines.append(" ".join(sentences[i:i + 4]))
    return "\n".join(lines) + "\n"


def yaml_str(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def roster_yaml(story):
    out = ["characters:"]
    for cid, name, aliases, gender, age, role, family, _p in story["cast"]:
        out.append(f"  - id: {cid}")
        out.append(f"    name: {yaml_str(name)}")
        out.append("    aliases: [" + ", ".join(yaml_str(a) for a in aliases) + "]")
        out.append(f"    gender: {gender}")
        out.append(f"    age_group: {age}")
        out.append(f"    role: {role}")
        if family:
            out.append(f"    family_status: {family}")
    if story.get("co_protagonists"):
        out.append("co_protagonists: true")
    return "\n".join(out) + "\n"


def manifest_yaml():
    out = ["chapter_delimiter: '^\\s*###\\s*$'", "tokenizer:", "  suffixes: [" +
           ", ".join(yaml_str(s) for s in BN_SUFFIXES) + "]", "writers:"]
    for wid, name, abbr, start, end in WRITERS:
        out.append(f"  - id: {wid}")
        out.append(f"    name: {yaml_str(name)}")
        out.append(f"    abbreviation: {abbr}")
        out.append(f"    career: [{start}, {end}]")
    out.append("stories:")
    for s in STORIES:
        out.append(f"  - id: {s['id']}")
        out.append(f"    title: {yaml_str(s['title'])}")
        out.append(f"    writer: {s['writer']}")
        out.append(f"    year: {s['year']}")
        out.append("    genres: [" + ", ".join(s["genres"]) + "]")
        out.append(f"    text: texts/{s['id']}.txt")
        out.append(f"    roster: rosters/{s['id']}.yaml")
    return "\n".join(out) + "\n"


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "minicorpus"
    (out / "texts").mkdir(parents=True, exist_ok=True)
    (out / "rosters").mkdir(parents=True, exist_ok=True)
    for story in STORIES:
        rng = random.Random(story["seed"])
        chapters = [chapter_text(rng, story, n) for n in story["chapters"]]
        (out / "texts" / f"{story['id']}.txt").write_text("###\n".join(chapters), encoding="utf-8")
        (out / "rosters" / f"{story['id']}.yaml").write_text(roster_yaml(story), encoding="utf-8")
    (out / "manifest.yaml").write_text(manifest_yaml(), encoding="utf-8")

    lexicon = ["# token\tpolarity"]
    for w, v in zip(POSITIVE, [0.8, 0.9, 0.6, 0.5, 0.4, 0.5]):
        lexicon.append(f"{w}\t{v}")
    for w, v in zip(NEGATIVE, [-0.7, -0.8, -0.9, -0.4, -0.6, -0.5]):
        lexicon.append(f"{w}\t{v}")
    lexicon += ["ভালো\t0.8", "সুখী\t0.7", "দুঃখী\t-0.7", "রাগী\t-0.6"]
    (out / "lexicon.tsv").write_text("\n".join(lexicon) + "\n", encoding="utf-8")
    (out / "negations.txt").write_text("not\nনা\n", encoding="utf-8")
    stop = ["the", "and", "to", "was", "is", "near", "not", "এবং", "হল", "ছিল", "দেখে"]
    (out / "stopwords.txt").write_text("\n".join(stop) + "\n", encoding="utf-8")
    (out / "common_verbs.txt").write_text("\n".join(VERBS) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
