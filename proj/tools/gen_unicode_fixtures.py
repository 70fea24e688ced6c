#!/usr/bin/env python3
"""Regenerates the frozen Unicode fixtures under assets/fixtures/unicode/.

Expected values come from Python's unicodedata (normalization, case folding)
and the third-party `regex` module (extended grapheme clusters via \\X, the
White_Space property), which are independent of the C++ implementation under
test.

Random strings are drawn only from scripts whose properties are stable across
Unicode versions. Grapheme cases draw from one script at a time: virama
conjuncts joined across script boundaries are segmented differently by
different UAX #29 revisions, and no real text contains them. Same-script
conjunct behaviour (the Unicode 15.1 GB9c rule, which CLDR-tailored breakers
applied earlier) is covered both by the random cases and by the hand-written
cases in HAND_GRAPHEME below.

Usage: python3 tools/gen_unicode_fixtures.py [--out-dir assets/fixtures/unicode]
"""

import argparse
import random
import unicodedata

import regex

WS = regex.compile(r"\p{White_Space}")

POOLS = {
    "ascii": [chr(c) for c in range(0x21, 0x7F)],
    "latin_marks": [chr(c) for c in list(range(0x41, 0x5B)) + list(range(0x61, 0x7B))
                    + list(range(0x300, 0x315)) + list(range(0xC0, 0xFF))],
    "devanagari": [chr(c) for c in range(0x0900, 0x0980)],
    "bengali": [chr(c) for c in range(0x0980, 0x0A00)],
    "gurmukhi": [chr(c) for c in range(0x0A00, 0x0A80)],
    "oriya": [chr(c) for c in range(0x0B00, 0x0B80)],
    "tamil": [chr(c) for c in range(0x0B80, 0x0C00)],
    "telugu": [chr(c) for c in range(0x0C00, 0x0C80)],
    "kannada": [chr(c) for c in range(0x0C80, 0x0D00)],
    "malayalam": [chr(c) for c in range(0x0D00, 0x0D80)],
    "hangul": [chr(c) for c in range(0xAC00, 0xAC40)] + [chr(c) for c in range(0x1100, 0x1113)]
              + [chr(c) for c in range(0x1161, 0x1176)],
    "greek_cyrillic": [chr(c) for c in list(range(0x391, 0x3A2)) + list(range(0x3B1, 0x3C5))
                       + list(range(0x410, 0x450))],
    "space": [" ", "\t", "\n", " ", " ", "　"],
}

OLD_EMOJI = ["\U0001F600", "\U0001F468", "\U0001F469", "\U0001F467", "\U0001F466",
             "\U0001F1EE", "\U0001F1F3", "❤️", "\U0001F3FD"]


def assigned(ch):
    return unicodedata.category(ch) not in ("Cn", "Cs", "Co")


def is_ws(ch):
    return WS.match(ch) is not None


def esc(s):
    out = []
    for ch in s:
        cp = ord(ch)
        if ch == "\\":
            out.append("\\\\")
        elif ch == "\t":
            out.append("\\t")
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\r":
            out.append("\\r")
        elif cp < 0x20 or cp > 0x7E:
            out.append("\\u%04X" % cp if cp <= 0xFFFF else "\\U%08X" % cp)
        else:
            out.append(ch)
    return "".join(out)


def collapse_and_strip(s):
    """Replace every White_Space run with a single U+0020 and trim the ends."""
    out = []
    pending = False
    for ch in s:
        if is_ws(ch):
            pending = bool(out)
            continue
        if pending:
            out.append(" ")
            pending = False
        out.append(ch)
    return "".join(out)


def normalize(s, form="NFC", fold=False):
    if fold:
        s = s.casefold()
    s = unicodedata.normalize(form, s)
    return collapse_and_strip(s)


def gen_nfc_cases(rng):
    cases = []

    def add(form, fold, raw):
        exp = normalize(raw, form="NFC" if form == "c" else "NFD", fold=fold == 1)
        again = normalize(exp, form="NFC" if form == "c" else "NFD", fold=fold == 1)
        assert again == exp, "oracle pipeline not idempotent for %r" % raw
        cases.append((form, fold, raw, exp))

    add("c", 0, "  hello  world\n")
    add("c", 0, "abc")
    add("c", 0, "कि")                      # KA + vowel sign I: no composition
    add("c", 0, "கோ")                # Tamil E+AA composes to OO sign
    add("c", 0, "क़")                      # KA + nukta: composition-excluded
    add("d", 0, "क़")                            # QA decomposes to KA + nukta
    add("c", 0, "é")
    add("d", 0, "é")
    add("c", 0, "ą́")                     # combining marks need ccc reordering
    add("c", 0, "ą́")
    add("c", 1, "OJC Marketing SDN BHD")
    add("c", 1, "Straße")                       # eszett folds to ss
    add("c", 1, "İstanbul")                     # dotted capital I folds to i + dot above
    add("c", 0, "a  b")
    add("c", 0, "　")
    add("c", 0, "")
    add("c", 0, "가")                      # jamo pair composes to a syllable
    add("d", 0, "가")

    pool_names = list(POOLS)
    for _ in range(400):
        k = rng.randint(1, 12)
        pools = rng.sample(pool_names, rng.randint(1, 3))
        chars = []
        for _ in range(k):
            ch = rng.choice(POOLS[rng.choice(pools)])
            if assigned(ch):
                chars.append(ch)
        raw = "".join(chars)
        add(rng.choice("cd"), rng.randint(0, 1), raw)
    return cases


def gen_grapheme_cases(rng):
    # text -> exclusive byte offsets of each cluster end, in UTF-8
    cases = []

    def boundaries(s):
        offs = []
        pos = 0
        for m in regex.findall(r"\X", s):
            pos += len(m.encode("utf-8"))
            offs.append(pos)
        return offs

    def add(s, offs=None):
        cases.append((s, boundaries(s) if offs is None else offs))

    add("abc")
    add("कि")                              # KA + spacing vowel sign: one cluster
    add("é")
    add("क̨́")
    add("가각")                  # syllable then composing jamo run
    add("\U0001F1EE\U0001F1F3\U0001F1EE\U0001F1F3")  # two regional-indicator pairs
    add("\U0001F468‍\U0001F469‍\U0001F467")
    add("a‍b")
    add("\r\n")
    add("x\r\ny")
    add("")

    def virama_before_mark(s):
        # a linker followed by another mark is not canonical text, and UAX #29
        # revisions disagree on where such clusters end
        for i in range(len(s) - 1):
            if unicodedata.combining(s[i]) == 9 and \
                    unicodedata.category(s[i + 1]) in ("Mn", "Mc"):
                return True
        return False

    emoji_ok = ("ascii", "latin_marks", "greek_cyrillic")
    for _ in range(260):
        k = rng.randint(1, 10)
        pool = rng.choice([p for p in POOLS if p != "space"])
        chars = []
        for _ in range(k):
            if pool in emoji_ok and rng.random() < 0.15:
                chars.append(rng.choice(OLD_EMOJI))
            else:
                ch = rng.choice(POOLS[pool])
                if assigned(ch):
                    chars.append(ch)
        s = "".join(chars)
        if not virama_before_mark(s):
            add(s)
    return cases


HAND_GRAPHEME = [
    # Devanagari conjunct KA VIRAMA KA joins; Tamil puLLi does not link
    ("क्क", [9]),
    ("क्", [6]),
    ("க்க", [6, 9]),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="assets/fixtures/unicode")
    args = ap.parse_args()
    rng = random.Random(20240811)

    nfc = gen_nfc_cases(rng)
    with open(args.out_dir + "/nfc_cases.tsv", "w", encoding="utf-8") as f:
        f.write("# form(c=NFC,d=NFD)\tfold\traw\texpected -- collapse+strip always on\n")
        for form, fold, raw, exp in nfc:
            f.write("%s\t%d\t%s\t%s\n" % (form, fold, esc(raw), esc(exp)))
    print("nfc_cases.tsv:", len(nfc))

    gcases = gen_grapheme_cases(rng)
    with open(args.out_dir + "/grapheme_cases.tsv", "w", encoding="utf-8") as f:
        f.write("# text\tcomma-joined exclusive UTF-8 byte offsets of cluster ends\n")
        for s, offs in gcases:
            f.write("%s\t%s\n" % (esc(s), ",".join(map(str, offs))))
        for s, offs in HAND_GRAPHEME:
            f.write("%s\t%s\n" % (esc(s), ",".join(map(str, offs))))
    print("grapheme_cases.tsv:", len(gcases) + len(HAND_GRAPHEME))


if __name__ == "__main__":
    main()
