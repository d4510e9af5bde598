#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace srsense {

struct RunOptions {
    std::size_t threads = 0;  // 0: SRSENSE_THREADS env or hardware default
};

// One experiment's output: a CSV table whose comment header echoes the full
// effective configuration, so the run is reconstructible from the file alone.
struct ResultTable {
    std::vector<std::string> header;  // emitted as "# <line>"
    std::string columns;              // CSV column row
    std::vector<std::string> rows;

    std::string to_csv() const;
};

// Dispatch on the config's `kind` (psd | gainsweep | tune | roc | pdwindow |
// seqdelay). Throws ConfigError for unknown kinds or malformed values.
ResultTable run_experiment(const Config& cfg, const RunOptions& opts = {});

ResultTable run_psd_demo(const Config& cfg, const RunOptions& opts = {});
ResultTable run_gain_sweep(const Config& cfg, const RunOptions& opts = {});
ResultTable run_tune(const Config& cfg, const RunOptions& opts = {});
ResultTable run_roc(const Config& cfg, const RunOptions& opts = {});
ResultTable run_pd_vs_window(const Config& cfg, const RunOptions& opts = {});
ResultTable run_seq_delay(const Config& cfg, const RunOptions& opts = {});

const char* version_string();

}  // namespace srsense
