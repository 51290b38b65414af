#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace semicrf {

// Exit codes used by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitCheckpoint = 4;
inline constexpr int kExitInternal = 5;

// Trains from a config file and writes <out_dir>/checkpoint.bin,
// <out_dir>/train.log and <out_dir>/config.txt; prints the best epoch
// summary to `out`.
void run_train(const std::string& config_path, const std::string& train_path,
               const std::string& dev_path, const std::string& out_dir, std::ostream& out,
               std::ostream* progress = nullptr);

// Predicts segmentations for input_path (gold tags ignored when present)
// and writes them in the task's own format.
void run_predict(const std::string& model_path, const std::string& input_path,
                 const std::string& output_path);

// Compares two files in the same format (detected from the gold file) and
// prints precision/recall/F to four decimals.
void run_eval(const std::string& gold_path, const std::string& pred_path, std::ostream& out);

// Auto-segments a raw corpus for external embedding training.
void run_emit_segmented(const std::string& model_path, const std::string& raw_path,
                        const std::string& out_path, const std::optional<std::string>& separator);

}
