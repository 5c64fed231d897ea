#!/usr/bin/env python3
"""Build data/valence_lexicon.tsv from the TextBlob and VADER word lists.

TextBlob's en-sentiment.xml lists one polarity per word sense; senses of the
same form are averaged (the same reduction TextBlob applies). VADER scores
(-4..4) are rescaled to [-1, 1] and only fill lemmas TextBlob lacks.

Usage: make_lexicon.py EN_SENTIMENT_XML VADER_LEXICON_TXT OUT_TSV
"""
import re
import sys
import xml.etree.ElementTree as ET
from collections import defaultdict

WORD = re.compile(r"^[a-z][a-z'-]*$")


def textblob_scores(path):
    sums = defaultdict(list)
    for w in ET.parse(path).getroot().iter("word"):
        form = w.get("form", "").lower()
        if WORD.match(form):
            sums[form].append(float(w.get("polarity", "0")))
    return {k: sum(v) / len(v) for k, v in sums.items()}


def vader_scores(path):
    out = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            parts = line.rstrip("\n").split("\t")
            if len(parts) < 2 or not WORD.match(parts[0]):
                continue
            out[parts[0]] = max(-1.0, min(1.0, float(parts[1]) / 4.0))
    return out


def main(argv):
    if len(argv) != 4:
        sys.exit(__doc__)
    merged = vader_scores(argv[2])
    merged.update(textblob_scores(argv[1]))
    with open(argv[3], "w", encoding="utf-8") as f:
        for lemma in sorted(merged):
            f.write(f"{lemma}\t{round(merged[lemma], 4):g}\n")


if __name__ == "__main__":
    main(sys.argv)
