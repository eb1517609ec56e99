#!/usr/bin/env python3
"""Regenerates include/vista/prompt_templates.hpp from prompts/*.txt."""

import hashlib
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent

HEADER = '''#pragma once

// Prompt templates for the oracle and end-to-end settings. Generated from
// prompts/*.txt by tools/embed_prompts.py; tests pin both the file contents
// and their SHA-256 digests, so template drift is caught by the test suite.

#include <string_view>

namespace vista::prompt_templates {{

inline constexpr std::string_view kTextPlaceholder = "[INSERT TEXT HERE]";
inline constexpr std::string_view kAnchorPlaceholder =
    "[INSERT ANCHOR LIST HERE (Format: ID  Offsets  Word)]";

// sha256 {oracle_digest}
inline constexpr std::string_view kOracle = R"VISTA_PROMPT({oracle})VISTA_PROMPT";

// sha256 {e2e_digest}
inline constexpr std::string_view kEndToEnd = R"VISTA_PROMPT({e2e})VISTA_PROMPT";

}}  // namespace vista::prompt_templates
'''


def main():
    oracle = (ROOT / "prompts" / "oracle_prompt.txt").read_text(encoding="utf-8")
    e2e = (ROOT / "prompts" / "e2e_prompt.txt").read_text(encoding="utf-8")
    out = HEADER.format(
        oracle=oracle,
        e2e=e2e,
        oracle_digest=hashlib.sha256(oracle.encode()).hexdigest(),
        e2e_digest=hashlib.sha256(e2e.encode()).hexdigest(),
    )
    (ROOT / "include" / "vista" / "prompt_templates.hpp").write_text(out, encoding="utf-8")


if __name__ == "__main__":
    main()
