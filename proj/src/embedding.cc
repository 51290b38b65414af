#include "semicrf/embedding.h"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "semicrf/error.h"
#include "semicrf/utf8.h"

namespace semicrf {

std::string entry_param_name(const std::string& table, const std::string& key) {
    return table + "/" + key;
}

std::string unk_param_name(const std::string& table) {
    return table + "#unk";
}

const autodiff::tensor* embedding_table::stored(const std::string& key) const {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second->value;
}

autodiff::node* embedding_table::lookup(autodiff::tape& t, const std::string& key) const {
    auto it = entries.find(key);
    if (it != entries.end()) {
        return t.leaf(*it->second);
    }
    if (trainable && unk) {
        return t.leaf(*unk);
    }
    return t.input(autodiff::tensor::zeros({dim}), "oov");
}

autodiff::parameter* embedding_table::add(autodiff::parameter_store& store, const std::string& key,
                                          autodiff::tensor value) {
    auto it = entries.find(key);
    if (it != entries.end()) {
        ++duplicate_count;
        it->second->value = std::move(value);
        return it->second;
    }
    autodiff::parameter* p = store.create(entry_param_name(name, key), std::move(value), trainable);
    entries[key] = p;
    keys.push_back(key);
    return p;
}

void embedding_table::ensure_unk(autodiff::parameter_store& store, autodiff::tensor value) {
    if (!unk) {
        unk = store.create(unk_param_name(name), std::move(value), trainable);
    }
}

std::uint64_t embedding_table::checksum() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](const autodiff::tensor& t) {
        for (double d : t.data) {
            unsigned char bytes[sizeof(double)];
            std::memcpy(bytes, &d, sizeof(double));
            for (unsigned char b : bytes) {
                h ^= b;
                h *= 1099511628211ULL;
            }
        }
    };
    for (const auto& k : keys) {
        mix(entries.at(k)->value);
    }
    if (unk) {
        mix(unk->value);
    }
    return h;
}

embedding_table load_embedding_file(const std::string& path, autodiff::parameter_store& store,
                                    const std::string& table_name, bool trainable,
                                    int expected_dim) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw config_error("embeddings: cannot open " + path);
    }
    embedding_table table;
    table.name = table_name;
    table.trainable = trainable;

    std::string line;
    int lineno = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::istringstream ls(line);
        std::vector<std::string> fields;
        std::string f;
        while (ls >> f) {
            fields.push_back(f);
        }
        if (fields.empty()) {
            continue;
        }
        if (first_content_line && fields.size() == 2) {
            // "count dim" header: both fields plain non-negative integers
            char* e0 = nullptr;
            char* e1 = nullptr;
            std::strtoull(fields[0].c_str(), &e0, 10);
            unsigned long long d = std::strtoull(fields[1].c_str(), &e1, 10);
            if (*e0 == '\0' && *e1 == '\0') {
                table.dim = static_cast<int>(d);
                first_content_line = false;
                continue;
            }
        }
        first_content_line = false;
        if (fields.size() < 2) {
            throw data_error("embeddings: " + path + ":" + std::to_string(lineno) +
                             ": expected token and vector");
        }
        int dim = static_cast<int>(fields.size()) - 1;
        if (table.dim == 0) {
            table.dim = dim;
        } else if (dim != table.dim) {
            throw data_error("embeddings: " + path + ":" + std::to_string(lineno) + ": got " +
                             std::to_string(dim) + " values, expected " + std::to_string(table.dim));
        }
        autodiff::tensor v = autodiff::tensor::zeros({dim});
        for (int i = 0; i < dim; ++i) {
            const std::string& s = fields[static_cast<std::size_t>(i) + 1];
            char* end = nullptr;
            double x = std::strtod(s.c_str(), &end);
            if (end != s.c_str() + s.size()) {
                throw data_error("embeddings: " + path + ":" + std::to_string(lineno) +
                                 ": bad number '" + s + "'");
            }
            v[i] = x;
        }
        table.add(store, fields[0], std::move(v));
    }
    if (expected_dim > 0 && table.dim != 0 && table.dim != expected_dim) {
        throw config_error("embeddings: " + path + " has dimension " + std::to_string(table.dim) +
                           ", config expects " + std::to_string(expected_dim));
    }
    if (table.dim == 0) {
        table.dim = expected_dim;
    }
    return table;
}

void save_embedding_file(const embedding_table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw data_error("embeddings: cannot write " + path);
    }
    char buf[64];
    for (const auto& k : table.keys) {
        out << k;
        const autodiff::tensor& v = table.entries.at(k)->value;
        for (double d : v.data) {
            std::snprintf(buf, sizeof(buf), " %.17g", d);
            out << buf;
        }
        out << "\n";
    }
    if (!out) {
        throw data_error("embeddings: write failed for " + path);
    }
}

std::string segment_key(const std::vector<std::string>& units, const std::string& separator,
                        bool* ambiguous) {
    if (units.empty()) {
        throw autodiff::precondition_error("segment_key: empty unit list");
    }
    std::string key;
    for (std::size_t i = 0; i < units.size(); ++i) {
        if (i) key += separator;
        key += units[i];
        if (ambiguous && !separator.empty() && units[i].find(separator) != std::string::npos) {
            *ambiguous = true;
        }
    }
    return key;
}

std::string render_segmented_line(const std::vector<std::string>& tokens, const segmentation& segs,
                                  const std::string& separator) {
    std::string out;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (i) out += ' ';
        std::vector<std::string> units(tokens.begin() + segs[i].begin, tokens.begin() + segs[i].end);
        out += segment_key(units, separator);
    }
    return out;
}

void emit_segmented_corpus(const std::function<segmentation(const std::vector<std::string>&)>& predict,
                           task_kind task, const std::string& raw_path, const std::string& out_path,
                           const std::string& separator) {
    std::ifstream in(raw_path, std::ios::binary);
    if (!in) {
        throw data_error("emit: cannot open " + raw_path);
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw data_error("emit: cannot write " + out_path);
    }
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::vector<std::string> tokens;
        if (task == task_kind::span_labeled) {
            tokens = split_words(line);
        } else {
            for (const auto& w : split_words(line)) {
                for (auto& c : utf8_chars(w)) {
                    tokens.push_back(std::move(c));
                }
            }
        }
        if (tokens.empty()) {
            out << "\n";
            continue;
        }
        out << render_segmented_line(tokens, predict(tokens), separator) << "\n";
    }
    if (!out) {
        throw data_error("emit: write failed for " + out_path);
    }
}

}
