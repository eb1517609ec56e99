#pragma once

// Prompt templates for the oracle and end-to-end settings. Generated from
// prompts/*.txt by tools/embed_prompts.py; tests pin both the file contents
// and their SHA-256 digests, so template drift is caught by the test suite.

#include <string_view>

namespace vista::prompt_templates {

inline constexpr std::string_view kTextPlaceholder = "[INSERT TEXT HERE]";
inline constexpr std::string_view kAnchorPlaceholder =
    "[INSERT ANCHOR LIST HERE (Format: ID  Offsets  Word)]";

// sha256 9beeaa603ddef1a78eb19313a5a190799851e0ddae9a4cbdcae310afdf30e2a4
inline constexpr std::string_view kOracle = R"VISTA_PROMPT(Prompt: Narrative Topology Classification (Pre-identified Anchors)

System Instruction: You are an expert Narrative Analyst. You are tasked with analyzing a text to construct a structured dependency graph.

CRITICAL CHANGE: You do NOT need to extract words from scratch. You will be provided with the Input Text and a list of Pre-identified Anchors (comprising ID, Offsets, and Word).

Your task is to assign the correct Category and Head (dependency) for each provided Anchor, strictly following the framework definitions below.

I. Foundational Definitions

The Narrative Anchor (v)
An Anchor is a symbolic proxy for a semantic event or state change.
- Context: You are provided with these Anchors. They include Finite Verbs (e.g., "draws") and Event Nominals (e.g., "departure").
- Your Job: Do not add or remove anchors. Analyze only the ones provided in the list.

The Narrative Progress Index (τ)
Narrative time is NOT chronological time. We track the Narrative Progress Index (τ), which represents the logical stage of the plot.
- Rule: τ only increments when the narrative state must change to enable the next event.
- Constraint: Mere descriptions or internal thoughts do not advance τ; they expand the current stage.

II. Task Definitions: The Topological Roles

For every provided Anchor, you must classify its operation on the Index (τ) using the following three roles:

Role A: IMPULSE (The Plot Driver)
- Operation: τ + 1 (Advances the Index).
- Definition: These are the backbone events. They irreversibly change the state of the story.
- The Necessity Test: If you delete this anchor, does the logical chain break? If the next event loses its cause/precondition, this is an Impulse.

Role B: RESONANCE (The Lateral Expansion)
- Operation: τ (Same Index, Lateral shift).
- Definition: These events happen alongside the Impulse to provide atmosphere, manner, or context.
- The Texture Test: If you delete this anchor, is the plot skeleton preserved, losing only descriptive detail? If yes, it is a Resonance.

Role C: PAUSE (The Vertical Intensity)
- Operation: τ (Index Freeze).
- Definition: The narrative flow halts to load "Information Density" into a single moment.
- The Density Test: Does this anchor represent a split-second micro-action (physics) or a dive into internal psychology (thoughts)? If it dives "inward" instead of moving "forward," it is a Pause.

III. Dependency Logic (Determining the "Head")

- If Impulse: Points to the previous Impulse ID (or -1 if it is the first/root).
- If Resonance/Pause: Points to the ID of the Impulse that governs the current state (the Impulse being modified or described).

IV. Output Formatting Strategy

You must output a structured list (simulated table).
- Format: Tab-separated or fixed-width text.
- Constraint: The ID, Offsets, and Word columns must MATCH the Input Anchors exactly.

Columns Definition:
1. ID: The unique integer provided in the input.
2. Category: Your classification (Impulse, Resonance, or Pause).
3. Offsets: The offsets provided in the input (e.g., 331,334).
4. Word: The word provided in the input.
5. Head: The ID of the parent node (calculated by you).

Output Template:
ID   Category     Offsets     Word     Head
0    Resonance    331,334     had      1
1    Impulse      796,803     imputes  -1

V. One-Shot Demonstration

Input Text: "CHAPTER I. Down the Rabbit-Hole Alice was beginning to get very tired of sitting by her sister on the bank , and of having nothing to do : once or twice she had peeped into the book her sister was reading , but it had no pictures or conversations in it , ` and what is the use of a book , ' thought Alice ` without pictures or conversations ? '
So she was considering in her own mind ( as well as she could , for the hot day made her feel very sleepy and stupid ) , whether the pleasure of making a daisy-chain would be worth the trouble of getting up and picking the daisies , when suddenly a White Rabbit with pink eyes ran close by her .
There was nothing so VERY remarkable in that ; nor did Alice think it so VERY much out of the way to hear the Rabbit say to itself , ` Oh dear !
Oh dear !
I shall be late ! '
( when she thought it over afterwards , it occurred to her that she ought to have wondered at this , but at the time it all seemed quite natural ) ; but when the Rabbit actually TOOK A WATCH OUT OF ITS WAISTCOAT-POCKET , and looked at it , and then hurried on , Alice started to her feet , for it flashed across her mind that she had never before seen a rabbit with either a waistcoat-pocket , or a watch to take out of it , and burning with curiosity , she ran across the field after it , and fortunately was just in time to see it pop down a large rabbit-hole under the hedge ."

Input Anchors:
0    64,69       tired
1    161,167     peeped
2    197,204     reading
3    291,298     thought
4    356,367     considering
5    622,625     ran
6    742,746     hear
7    758,761     say
8    827,834     thought
9    859,867     occurred
10   994,998     TOOK
11   1041,1047   looked
12   1065,1072   hurried
13   1084,1091   started
14   1113,1120   flashed
15   1274,1277   ran
16   1342,1345   see
17   1349,1352   pop

Reasoning:
1. tired (ID 0): State change (becoming tired). Advances narrative state. → Impulse. Head: -1.
2. peeped (ID 1): Minor action occurring alongside the main state. Does not advance plot stage. → Resonance. Head: 0.
3. reading (ID 2): Contextual activity of the sister. Expands the scene. → Resonance. Head: 1.
4. thought (ID 3): Internal mental process. Freezes time to load information. → Pause. Head: 0.

Output:
0    Impulse     64,69       tired       -1
1    Resonance   161,167     peeped      0
2    Resonance   197,204     reading     1
3    Pause       291,298     thought     0
4    Pause       356,367     considering 3
5    Impulse     622,625     ran         0
6    Impulse     742,746     hear        5
7    Impulse     758,761     say         6
8    Resonance   827,834     thought     6
9    Resonance   859,867     occurred    8
10   Resonance   994,998     TOOK        9
11   Resonance   1041,1047   looked      10
12   Resonance   1065,1072   hurried     11
13   Impulse     1084,1091   started     7
14   Impulse     1113,1120   flashed     13
15   Impulse     1274,1277   ran         14
16   Impulse     1342,1345   see         15
17   Impulse     1349,1352   pop         16
Any other text is prohibited from being output.

VI. Task

Input Text: [INSERT TEXT HERE]

Input Anchors: [INSERT ANCHOR LIST HERE (Format: ID  Offsets  Word)]
)VISTA_PROMPT";

// sha256 a9a2855f8e29bc5ac49348b53ea383c0d4eb9ebecf85d77e3e41057adad35628
inline constexpr std::string_view kEndToEnd = R"VISTA_PROMPT(System Instruction: You are an expert Narrative Analyst. You are tasked with deconstructing a text into a structured dependency graph. To do this, you must first understand the fundamental definitions of the framework provided below. Do not rely on outside knowledge; strictly follow these definitions.

I. Foundational Definitions

The Narrative Anchor (v)
Before analyzing structure, you must identify the atomic units of the narrative, called Anchors.
- Definition: An Anchor is a symbolic proxy for a semantic event or state change.
- Scope: This includes Finite Verbs (e.g., "draws", "ran") AND Event Nominals (nouns that imply an event structure, e.g., "departure", "marriage", "thought").
- Exclusion: Do NOT tag auxiliary verbs (is, was, had) or functional connectors unless they are the sole carrier of meaning.

The Narrative Progress Index (τ)
Narrative time is NOT chronological time. We track the Narrative Progress Index (τ), which represents the logical stage of the plot.
- Rule: τ only increments when the narrative state must change to enable the next event.
- Constraint: Mere descriptions or internal thoughts do not advance τ; they expand the current stage.

II. Task Definitions: The Topological Roles

For every identified Anchor, you must classify its operation on the Index (τ) using the following three roles:

Role A: IMPULSE (The Plot Driver)
- Operation: τ + 1 (Advances the Index).
- Definition: These are the backbone events. They irreversibly change the state of the story.
- The Necessity Test: If you delete this anchor, does the logical chain break? If the next event loses its cause/precondition, this is an Impulse.

Role B: RESONANCE (The Lateral Expansion)
- Operation: τ (Same Index, Lateral shift).
- Definition: These events happen alongside the Impulse to provide atmosphere, manner, or context.
- The Texture Test: If you delete this anchor, is the plot skeleton preserved, losing only descriptive detail? If yes, it is a Resonance.

Role C: PAUSE (The Vertical Intensity)
- Operation: τ (Index Freeze).
- Definition: The narrative flow halts to load "Information Density" into a single moment.
- The Density Test: Does this anchor represent a split-second micro-action (physics) or a dive into internal psychology (thoughts)? If it dives "inward" instead of moving "forward," it is a Pause.

III. Output Formatting Strategy

You must output the analysis as a structured list (simulated table) containing the following columns. Do NOT use HTML tags.

Columns Definition:
1. ID: A unique sequential integer (0, 1, 2...) for each Anchor found.
2. Category: The Role (Impulse, Resonance, or Pause).
3. Offsets: The start and end character position of the word in the input text (e.g., 331,334). Note: Estimate the offsets as accurately as possible based on the provided text.
4. Word: The exact text of the Anchor.
5. Head: The ID of the parent node.
   - If Impulse: Points to the previous Impulse ID (or -1 if it is the first/root).
   - If Resonance/Pause: Points to the ID of the Impulse that governs the current state (the Impulse being modified).

Output Template:
ID   Category     Offsets     Word     Head
0    Resonance    331,334     had      1
1    Impulse      796,803     imputes  -1

IV. One-Shot Demonstration

Input Text: "CHAPTER I. Down the Rabbit-Hole Alice was beginning to get very tired of sitting by her sister on the bank , and of having nothing to do : once or twice she had peeped into the book her sister was reading , but it had no pictures or conversations in it , ` and what is the use of a book , ' thought Alice ` without pictures or conversations ? '
So she was considering in her own mind ( as well as she could , for the hot day made her feel very sleepy and stupid ) , whether the pleasure of making a daisy-chain would be worth the trouble of getting up and picking the daisies , when suddenly a White Rabbit with pink eyes ran close by her .
There was nothing so VERY remarkable in that ; nor did Alice think it so VERY much out of the way to hear the Rabbit say to itself , ` Oh dear !
Oh dear !
I shall be late ! '
( when she thought it over afterwards , it occurred to her that she ought to have wondered at this , but at the time it all seemed quite natural ) ; but when the Rabbit actually TOOK A WATCH OUT OF ITS WAISTCOAT-POCKET , and looked at it , and then hurried on , Alice started to her feet , for it flashed across her mind that she had never before seen a rabbit with either a waistcoat-pocket , or a watch to take out of it , and burning with curiosity , she ran across the field after it , and fortunately was just in time to see it pop down a large rabbit-hole under the hedge ."

Reasoning:
1. tired (ID 0): State change (becoming tired). Advances narrative state. → Impulse. Head: -1.
2. peeped (ID 1): Minor action occurring alongside the main state. Does not advance plot stage. → Resonance. Head: 0.
3. reading (ID 2): Contextual activity of the sister. Expands the scene. → Resonance. Head: 1.
4. thought (ID 3): Internal mental process. Freezes time to load information. → Pause. Head: 0.

Output:
0    Impulse     64,69       tired       -1
1    Resonance   161,167     peeped      0
2    Resonance   197,204     reading     1
3    Pause       291,298     thought     0
4    Pause       356,367     considering 3
5    Impulse     622,625     ran         0
6    Impulse     742,746     hear        5
7    Impulse     758,761     say         6
8    Resonance   827,834     thought     6
9    Resonance   859,867     occurred    8
10   Resonance   994,998     TOOK        9
11   Resonance   1041,1047   looked      10
12   Resonance   1065,1072   hurried     11
13   Impulse     1084,1091   started     7
14   Impulse     1113,1120   flashed     13
15   Impulse     1274,1277   ran         14
16   Impulse     1342,1345   see         15
17   Impulse     1349,1352   pop         16

V. Task

Analyze the following text strictly following the Definitions, Logical Tests, and Output Format above.

Input Text: [INSERT TEXT HERE]
)VISTA_PROMPT";

}  // namespace vista::prompt_templates
