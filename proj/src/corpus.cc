#include "semicrf/corpus.h"

#include <fstream>
#include <sstream>

#include "semicrf/utf8.h"

namespace semicrf {

namespace {

constexpr const char* kNone = "NONE";
constexpr const char* kWord = "WORD";

int intern_label(std::vector<std::string>& labels, const std::string& name) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == name) {
            return static_cast<int>(i);
        }
    }
    labels.push_back(name);
    return static_cast<int>(labels.size()) - 1;
}

struct parsed_tag {
    char prefix;        // B I E S or O
    std::string label;  // empty for O and bare word-seg tags
};

parsed_tag split_tag(const std::string& tag, task_kind task, const std::string& where) {
    if (tag == "O") {
        return {'O', ""};
    }
    char p = tag[0];
    if (p != 'B' && p != 'I' && p != 'E' && p != 'S') {
        throw data_error(where + ": unknown tag prefix in '" + tag + "'");
    }
    if (tag.size() == 1) {
        if (task == task_kind::span_labeled) {
            throw data_error(where + ": tag '" + tag + "' is missing its label suffix");
        }
        return {p, ""};
    }
    if (tag[1] != '-' || tag.size() == 2) {
        throw data_error(where + ": malformed tag '" + tag + "'");
    }
    return {p, tag.substr(2)};
}

}  // namespace

int labeled_corpus::label_id(const std::string& name) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

segmentation bieso_decode(const std::vector<std::string>& tags, std::vector<std::string>& labels,
                          task_kind task, int* repairs) {
    segmentation segs;
    int fixes = 0;
    int open_begin = -1;
    std::string open_label;
    int n = static_cast<int>(tags.size());

    auto close_open = [&](int end_exclusive, bool repaired) {
        if (open_begin < 0) return;
        segs.push_back(segment{open_begin, end_exclusive, intern_label(labels, open_label)});
        if (repaired) ++fixes;
        open_begin = -1;
    };

    for (int i = 0; i < n; ++i) {
        parsed_tag t = split_tag(tags[i], task, "tags");
        std::string lab = task == task_kind::word_seg ? kWord : t.label;
        switch (t.prefix) {
            case 'O':
                close_open(i, true);
                if (task == task_kind::word_seg) {
                    ++fixes;  // O is not part of the word-seg scheme
                    segs.push_back(segment{i, i + 1, intern_label(labels, kWord)});
                } else {
                    segs.push_back(segment{i, i + 1, intern_label(labels, kNone)});
                }
                break;
            case 'S':
                close_open(i, true);
                segs.push_back(segment{i, i + 1, intern_label(labels, lab)});
                break;
            case 'B':
                close_open(i, true);
                open_begin = i;
                open_label = lab;
                break;
            case 'I':
                if (open_begin >= 0 && open_label == lab) {
                    // continue the open segment
                } else {
                    close_open(i, true);
                    ++fixes;  // I without a matching B: treat as B
                    open_begin = i;
                    open_label = lab;
                }
                break;
            case 'E':
                if (open_begin >= 0 && open_label == lab) {
                    close_open(i + 1, false);
                } else {
                    close_open(i, true);
                    ++fixes;  // stray E: treat as S
                    segs.push_back(segment{i, i + 1, intern_label(labels, lab)});
                }
                break;
        }
    }
    close_open(n, true);
    if (repairs) {
        *repairs += fixes;
    }
    return segs;
}

std::vector<std::string> bieso_encode(const segmentation& segs,
                                      const std::vector<std::string>& labels, task_kind task) {
    std::vector<std::string> tags;
    for (const auto& s : segs) {
        const std::string& lab = labels[static_cast<std::size_t>(s.label)];
        if (task == task_kind::span_labeled && lab == kNone) {
            for (int i = s.begin; i < s.end; ++i) {
                tags.push_back("O");
            }
            continue;
        }
        std::string suffix = task == task_kind::word_seg ? "" : "-" + lab;
        if (s.length() == 1) {
            tags.push_back("S" + suffix);
        } else {
            tags.push_back("B" + suffix);
            for (int i = s.begin + 1; i < s.end - 1; ++i) {
                tags.push_back("I" + suffix);
            }
            tags.push_back("E" + suffix);
        }
    }
    return tags;
}

labeled_corpus parse_conll(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("corpus: cannot open " + path);
    }
    labeled_corpus corpus;
    corpus.task = task_kind::span_labeled;
    corpus.labels.push_back(kNone);

    std::vector<std::string> tokens;
    std::vector<std::string> tags;
    bool docstart = false;
    std::string line;
    int lineno = 0;

    auto flush = [&] {
        if (!tokens.empty() && !docstart) {
            labeled_sequence seq;
            seq.tokens = std::move(tokens);
            seq.gold = bieso_decode(tags, corpus.labels, corpus.task, &corpus.repair_warnings);
            corpus.sequences.push_back(std::move(seq));
        }
        tokens.clear();
        tags.clear();
        docstart = false;
    };

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::vector<std::string> fields = split_words(line);
        if (fields.empty()) {
            flush();
            continue;
        }
        if (fields[0] == "-DOCSTART-") {
            docstart = true;
            continue;
        }
        if (fields.size() != 2) {
            throw data_error("corpus: " + path + ":" + std::to_string(lineno) +
                             ": expected two columns, got " + std::to_string(fields.size()));
        }
        // validate tag syntax here so errors carry the line number
        split_tag(fields[1], corpus.task, path + ":" + std::to_string(lineno));
        tokens.push_back(fields[0]);
        tags.push_back(fields[1]);
    }
    flush();
    return corpus;
}

labeled_corpus parse_wordseg(const std::string& path, bool normalize) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("corpus: cannot open " + path);
    }
    labeled_corpus corpus;
    corpus.task = task_kind::word_seg;
    corpus.labels.push_back(kWord);

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::vector<std::string> words = split_words(line);
        if (words.empty()) {
            ++corpus.skipped_lines;
            continue;
        }
        labeled_sequence seq;
        for (const auto& w : words) {
            int begin = static_cast<int>(seq.tokens.size());
            for (auto& c : utf8_chars(w)) {
                seq.tokens.push_back(normalize ? normalize_fullwidth(c) : std::move(c));
            }
            seq.gold.push_back(segment{begin, static_cast<int>(seq.tokens.size()), 0});
        }
        corpus.sequences.push_back(std::move(seq));
    }
    return corpus;
}

std::vector<std::string> tokenize_line(const std::string& line, task_kind task, bool normalize) {
    if (task == task_kind::span_labeled) {
        return split_words(line);
    }
    std::vector<std::string> tokens;
    for (const auto& w : split_words(line)) {
        for (auto& c : utf8_chars(w)) {
            tokens.push_back(normalize ? normalize_fullwidth(c) : std::move(c));
        }
    }
    return tokens;
}

}
