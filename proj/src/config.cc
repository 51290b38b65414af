#include "semicrf/config.h"

#include <fstream>
#include <sstream>

namespace semicrf {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw config_error("config: bad boolean for '" + key + "': " + v);
}

int parse_int(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        int r = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw config_error("config: bad integer for '" + key + "': " + v);
    }
}

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        double r = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return r;
    } catch (const std::exception&) {
        throw config_error("config: bad number for '" + key + "': " + v);
    }
}

}  // namespace

std::string to_string(composition_kind k) {
    switch (k) {
        case composition_kind::srnn: return "srnn";
        case composition_kind::scnn: return "scnn";
        case composition_kind::sconcate: return "sconcate";
    }
    return "?";
}

std::string to_string(task_kind k) {
    return k == task_kind::span_labeled ? "ner" : "cws";
}

void model_config::finalize() {
    if (!separator) {
        separator = task == task_kind::span_labeled ? "_" : "";
    }
    if (!use_segment_embeddings) {
        use_segment_embeddings = !segment_embeddings.empty();
    }
}

bool model_config::segment_embeddings_enabled() const {
    return use_segment_embeddings.value_or(!segment_embeddings.empty());
}

const std::string& model_config::sep() const {
    if (!separator) {
        throw config_error("config: separator unresolved (finalize not called)");
    }
    return *separator;
}

void model_config::validate() const {
    auto positive = [](int v, const char* name) {
        if (v <= 0) {
            throw config_error(std::string("config: ") + name + " must be positive");
        }
    };
    positive(dim_unit_pre, "dim_unit_pre");
    positive(dim_unit_tuned, "dim_unit_tuned");
    positive(dim_input, "dim_input");
    positive(dim_hidden, "dim_hidden");
    positive(dim_scomp, "dim_scomp");
    positive(dim_semb, "dim_semb");
    positive(dim_label, "dim_label");
    positive(dim_segment, "dim_segment");
    if (max_seg_len < 0) {
        throw config_error("config: max_segment_length must be >= 0");
    }
    if (eta0 <= 0.0) {
        throw config_error("config: eta0 must be > 0");
    }
    if (patience < 1) {
        throw config_error("config: patience must be >= 1");
    }
    if (max_epochs < 1) {
        throw config_error("config: max_epochs must be >= 1");
    }
    if (clip_norm < 0.0) {
        throw config_error("config: clip_norm must be >= 0");
    }
}

model_config parse_config_text(const std::string& text) {
    model_config cfg;
    bool saw_task = false;
    bool saw_comp = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw config_error("config: line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key == "task") {
            saw_task = true;
            if (val == "ner") cfg.task = task_kind::span_labeled;
            else if (val == "cws") cfg.task = task_kind::word_seg;
            else throw config_error("config: unknown task: " + val);
        } else if (key == "composition") {
            saw_comp = true;
            if (val == "srnn") cfg.comp = composition_kind::srnn;
            else if (val == "scnn") cfg.comp = composition_kind::scnn;
            else if (val == "sconcate") cfg.comp = composition_kind::sconcate;
            else throw config_error("config: unknown composition: " + val);
        } else if (key == "max_segment_length") {
            cfg.max_seg_len = parse_int(val, key);
        } else if (key == "dim_unit_pre") {
            cfg.dim_unit_pre = parse_int(val, key);
        } else if (key == "dim_unit_tuned") {
            cfg.dim_unit_tuned = parse_int(val, key);
        } else if (key == "dim_input") {
            cfg.dim_input = parse_int(val, key);
        } else if (key == "dim_hidden") {
            cfg.dim_hidden = parse_int(val, key);
        } else if (key == "dim_scomp") {
            cfg.dim_scomp = parse_int(val, key);
        } else if (key == "dim_semb") {
            cfg.dim_semb = parse_int(val, key);
        } else if (key == "dim_label") {
            cfg.dim_label = parse_int(val, key);
        } else if (key == "dim_segment") {
            cfg.dim_segment = parse_int(val, key);
        } else if (key == "unit_embeddings") {
            cfg.unit_embeddings = val;
        } else if (key == "segment_embeddings") {
            cfg.segment_embeddings = val;
        } else if (key == "use_segment_embeddings") {
            cfg.use_segment_embeddings = parse_bool(val, key);
        } else if (key == "fine_tune_unit_pre") {
            cfg.fine_tune_unit_pre = parse_bool(val, key);
        } else if (key == "fine_tune_unit_tuned") {
            cfg.fine_tune_unit_tuned = parse_bool(val, key);
        } else if (key == "fine_tune_segment") {
            cfg.fine_tune_segment = parse_bool(val, key);
        } else if (key == "separator") {
            cfg.separator = val;
        } else if (key == "normalize_fullwidth") {
            cfg.normalize_fullwidth = parse_bool(val, key);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(std::stoull(val));
        } else if (key == "eta0") {
            cfg.eta0 = parse_double(val, key);
        } else if (key == "max_epochs") {
            cfg.max_epochs = parse_int(val, key);
        } else if (key == "patience") {
            cfg.patience = parse_int(val, key);
        } else if (key == "clip_norm") {
            cfg.clip_norm = parse_double(val, key);
        } else if (key == "labels") {
            cfg.labels.clear();
            std::istringstream ls(val);
            std::string lab;
            while (ls >> lab) cfg.labels.push_back(lab);
        } else {
            throw config_error("config: unknown key '" + key + "' at line " + std::to_string(lineno));
        }
    }
    if (!saw_task) throw config_error("config: missing required key 'task'");
    if (!saw_comp) throw config_error("config: missing required key 'composition'");
    cfg.validate();
    return cfg;
}

model_config parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw config_error("config: cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string to_text(const model_config& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "task = " << to_string(cfg.task) << "\n";
    out << "composition = " << to_string(cfg.comp) << "\n";
    out << "max_segment_length = " << cfg.max_seg_len << "\n";
    out << "dim_unit_pre = " << cfg.dim_unit_pre << "\n";
    out << "dim_unit_tuned = " << cfg.dim_unit_tuned << "\n";
    out << "dim_input = " << cfg.dim_input << "\n";
    out << "dim_hidden = " << cfg.dim_hidden << "\n";
    out << "dim_scomp = " << cfg.dim_scomp << "\n";
    out << "dim_semb = " << cfg.dim_semb << "\n";
    out << "dim_label = " << cfg.dim_label << "\n";
    out << "dim_segment = " << cfg.dim_segment << "\n";
    out << "unit_embeddings = " << cfg.unit_embeddings << "\n";
    out << "segment_embeddings = " << cfg.segment_embeddings << "\n";
    out << "use_segment_embeddings = " << (cfg.segment_embeddings_enabled() ? "true" : "false") << "\n";
    out << "fine_tune_unit_pre = " << (cfg.fine_tune_unit_pre ? "true" : "false") << "\n";
    out << "fine_tune_unit_tuned = " << (cfg.fine_tune_unit_tuned ? "true" : "false") << "\n";
    out << "fine_tune_segment = " << (cfg.fine_tune_segment ? "true" : "false") << "\n";
    if (cfg.separator) {
        out << "separator = " << *cfg.separator << "\n";
    }
    out << "normalize_fullwidth = " << (cfg.normalize_fullwidth ? "true" : "false") << "\n";
    out << "seed = " << cfg.seed << "\n";
    out << "eta0 = " << cfg.eta0 << "\n";
    out << "max_epochs = " << cfg.max_epochs << "\n";
    out << "patience = " << cfg.patience << "\n";
    out << "clip_norm = " << cfg.clip_norm << "\n";
    if (!cfg.labels.empty()) {
        out << "labels =";
        for (const auto& l : cfg.labels) out << " " << l;
        out << "\n";
    }
    return out.str();
}

}
