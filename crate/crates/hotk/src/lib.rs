/*!
A workbench for typed higher-order logics: standard type theory (STT), its
cumulative variants (CTT, PCTT), Florio–Jones type theory (FJT) and the
augmented theories STT↑ and STT↓.

Modules:
- [`kernel`]: syntax, formation checking, expansion of defined notation.
- [`translate`]: the κ-translation and the interpretations between theories.
- [`models`]: finite typed models, evaluation and axiom checking.
- [`settheory`]: membership graphs, levels, ranks and the S/T constructions.
- [`proofkit`]: natural-deduction proof objects and their checker.
- [`cli`]: the command-line front end.
*/

pub mod cli;
pub mod kernel;
pub mod models;
pub mod proofkit;
pub mod settheory;
pub mod translate;
