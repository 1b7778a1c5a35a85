#pragma once

// Reproduction commands: each returns a JSON certificate listing every
// checked clause with a pass flag, plus an overall "pass". These back both
// the CLI `repro` subcommand and the acceptance suite.

#include <string>

#include "fuslim/json_io.hpp"

namespace fuslim {

Json repro_example43(uint32_t p);
Json repro_b3r(bool deep);                  // deep adds r = 6
Json repro_acyclicity();                    // criterion 2
Json repro_boundB(const std::string& system, uint64_t seed);  // criterion 3, one system
Json repro_thm63(int case_no);              // criterion 10, cases 1..4

Json criterion_oracle_equivalence();        // criterion 4
Json criterion_cor35();                     // criterion 5
Json criterion_lemma21(uint64_t seed);      // criterion 6
Json criterion_congruence();                // criterion 7
Json criterion_mackeyfication(uint64_t seed);  // criterion 8

}  // namespace fuslim
