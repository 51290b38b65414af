#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "semicrf/autodiff.h"
#include "semicrf/segment.h"

namespace semicrf {

// String-keyed vector table backed by parameters in a shared store.
// Lookup is total: a miss falls back to the table's OOV policy — the zero
// vector for a fixed table, the shared learned UNK parameter for a
// trainable one.
struct embedding_table {
    std::string name;
    int dim = 0;
    bool trainable = false;
    std::vector<std::string> keys;  // insertion order, serialization order
    std::unordered_map<std::string, autodiff::parameter*> entries;
    autodiff::parameter* unk = nullptr;
    int duplicate_count = 0;

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    const autodiff::tensor* stored(const std::string& key) const;

    autodiff::node* lookup(autodiff::tape& t, const std::string& key) const;

    autodiff::parameter* add(autodiff::parameter_store& store, const std::string& key,
                             autodiff::tensor value);
    void ensure_unk(autodiff::parameter_store& store, autodiff::tensor value);

    // FNV-1a over entry bytes (and UNK) in insertion order.
    std::uint64_t checksum() const;
};

std::string entry_param_name(const std::string& table, const std::string& key);
std::string unk_param_name(const std::string& table);

// Text format: optional "count dim" header, then one "token v1 .. v_dim"
// line per entry; UTF-8, whitespace separated. A duplicate token keeps the
// last vector and bumps duplicate_count.
embedding_table load_embedding_file(const std::string& path, autodiff::parameter_store& store,
                                    const std::string& table_name, bool trainable,
                                    int expected_dim = 0);

// Writes entries (not UNK) in insertion order at full double precision.
void save_embedding_file(const embedding_table& table, const std::string& path);

// Joins unit strings with the separator. If ambiguous is given, it is set
// when some unit itself contains the (non-empty) separator.
std::string segment_key(const std::vector<std::string>& units, const std::string& separator,
                        bool* ambiguous = nullptr);

// One predicted segment per key, keys joined by single spaces.
std::string render_segmented_line(const std::vector<std::string>& tokens, const segmentation& segs,
                                  const std::string& separator);

// Runs `predict` over every line of raw_path (units: whitespace-split words
// for span tasks, UTF-8 characters for word segmentation) and writes the
// auto-segmented corpus to out_path. Empty lines stay empty.
void emit_segmented_corpus(const std::function<segmentation(const std::vector<std::string>&)>& predict,
                           task_kind task, const std::string& raw_path, const std::string& out_path,
                           const std::string& separator);

}
