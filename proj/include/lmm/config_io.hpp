#ifndef LMM_CONFIG_IO_HPP
#define LMM_CONFIG_IO_HPP

#include <string>

#include "lmm/model.hpp"

namespace lmm {

// Loads and validates a model configuration from a JSON file.  Layout:
//
//   {
//     "tenor":       { "dates": [1.0, 1.5, 2.0], "year_fractions": [0.5, 0.5] },
//     "vols":        [ { "levels": [0.2] },
//                      { "levels": [0.3, 0.1], "breakpoints": [1.0] } ],
//     "correlation": { "beta": 0.1 }          // or { "matrix": [[1,1],[1,1]] }
//     "curve":       [0.04, 0.04]
//   }
//
// "year_fractions" is optional (defaults to date differences).  Validation
// errors name the offending field and throw ConfigError.
ModelConfig load_config(const std::string& path);

ModelConfig parse_config(const std::string& json_text, const std::string& origin = "<string>");

} // namespace lmm

#endif
