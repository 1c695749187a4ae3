// config_file.hpp — flat `key = value` config file loader.
//
// Format: UTF-8 text, one `key = value` pair per line, `#` starts a comment,
// blank lines ignored. Keys match the EngineConfig field names (see
// default.conf for the full list). The strategy table is overridden with
// 8 lines of the form `<polarity>.<attention> = <strategy>`, e.g.
// `positive.attentive = engage`; a partial override is rejected.
#pragma once

#include <string>
#include <vector>

#include "engage/config.hpp"

namespace engage {

// Parses `text` on top of defaults. Collects every problem (unknown key,
// bad value, partial strategy table, violated constraint) into `errors`;
// returns true iff no errors. `out` is only meaningful on success.
bool load_config_from_string(const std::string& text, EngineConfig& out,
                             std::vector<std::string>& errors);

// Reads the file at `path` and delegates to load_config_from_string.
// An unreadable file yields a single "cannot read" error and returns false
// with `io_error` set (distinguishes exit code 2 from exit code 1).
bool load_config_file(const std::string& path, EngineConfig& out,
                      std::vector<std::string>& errors, bool& io_error);

}  // namespace engage
