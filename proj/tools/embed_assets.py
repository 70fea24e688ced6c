#!/usr/bin/env python3
"""Generates a C++ source exposing bundled asset files as string constants.

Each input file becomes an entry keyed by its basename; lookups go through
ocrkit::embedded::asset() declared in include/ocrkit/embedded_assets.hpp.
"""

import argparse
import os


def cpp_bytes(data):
    out = []
    for i in range(0, len(data), 20):
        chunk = data[i:i + 20]
        out.append("    " + "".join("0x%02x," % b for b in chunk))
    return "\n".join(out)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("inputs", nargs="+")
    args = ap.parse_args()

    entries = []
    for path in args.inputs:
        with open(path, "rb") as f:
            data = f.read()
        entries.append((os.path.basename(path), data))

    lines = [
        "// Generated by tools/embed_assets.py; do not edit.",
        "#include \"ocrkit/embedded_assets.hpp\"",
        "",
        "#include <array>",
        "",
        "namespace ocrkit::embedded {",
        "namespace {",
    ]
    for idx, (name, data) in enumerate(entries):
        lines.append("const unsigned char kData%d[] = {" % idx)
        lines.append(cpp_bytes(data) if data else "    0x00,")
        lines.append("};")
    lines.append("struct Entry { const char* name; const unsigned char* data; std::size_t size; };")
    lines.append("const Entry kEntries[] = {")
    for idx, (name, data) in enumerate(entries):
        lines.append("    {\"%s\", kData%d, %d}," % (name, idx, len(data)))
    lines.append("};")
    lines.append("} // namespace")
    lines.append("")
    lines.append("std::optional<std::string_view> asset(std::string_view name) {")
    lines.append("    for (const Entry& e : kEntries) {")
    lines.append("        if (name == e.name) {")
    lines.append("            return std::string_view(reinterpret_cast<const char*>(e.data), e.size);")
    lines.append("        }")
    lines.append("    }")
    lines.append("    return std::nullopt;")
    lines.append("}")
    lines.append("")
    lines.append("} // namespace ocrkit::embedded")
    lines.append("")

    os.makedirs(os.path.dirname(args.out), exist_ok=True)
    with open(args.out, "w") as f:
        f.write("\n".join(lines))


if __name__ == "__main__":
    main()
