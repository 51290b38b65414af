#include "semicrf/checkpoint.h"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace semicrf {

namespace {

constexpr char kMagic[8] = {'S', 'C', 'R', 'F', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

void write_u8(std::ostream& out, std::uint8_t v) {
    out.put(static_cast<char>(v));
}

void write_u32(std::ostream& out, std::uint32_t v) {
    char buf[4];
    std::memcpy(buf, &v, 4);
    out.write(buf, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.write(buf, 8);
}

void write_string(std::ostream& out, const std::string& s) {
    write_u64(out, s.size());
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void write_doubles(std::ostream& out, const std::vector<double>& v) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::uint8_t read_u8(std::istream& in) {
    int c = in.get();
    if (c == EOF) {
        throw checkpoint_error("checkpoint: truncated file");
    }
    return static_cast<std::uint8_t>(c);
}

std::uint32_t read_u32(std::istream& in) {
    char buf[4];
    if (!in.read(buf, 4)) {
        throw checkpoint_error("checkpoint: truncated file");
    }
    std::uint32_t v;
    std::memcpy(&v, buf, 4);
    return v;
}

std::uint64_t read_u64(std::istream& in) {
    char buf[8];
    if (!in.read(buf, 8)) {
        throw checkpoint_error("checkpoint: truncated file");
    }
    std::uint64_t v;
    std::memcpy(&v, buf, 8);
    return v;
}

std::string read_string(std::istream& in) {
    std::uint64_t len = read_u64(in);
    std::string s(len, '\0');
    if (len && !in.read(s.data(), static_cast<std::streamsize>(len))) {
        throw checkpoint_error("checkpoint: truncated string");
    }
    return s;
}

void write_table(std::ostream& out, const embedding_table& table) {
    write_string(out, table.name);
    write_u32(out, static_cast<std::uint32_t>(table.dim));
    write_u8(out, table.trainable ? 1 : 0);
    write_u8(out, table.unk ? 1 : 0);
    write_u64(out, table.keys.size());
    for (const auto& k : table.keys) {
        write_string(out, k);
    }
}

embedding_table read_table(std::istream& in, autodiff::parameter_store& store) {
    embedding_table table;
    table.name = read_string(in);
    table.dim = static_cast<int>(read_u32(in));
    table.trainable = read_u8(in) != 0;
    bool has_unk = read_u8(in) != 0;
    std::uint64_t n = read_u64(in);
    for (std::uint64_t i = 0; i < n; ++i) {
        std::string key = read_string(in);
        autodiff::parameter* p = store.find(entry_param_name(table.name, key));
        if (!p) {
            throw checkpoint_error("checkpoint: table " + table.name + " misses entry '" + key + "'");
        }
        table.keys.push_back(key);
        table.entries[key] = p;
    }
    if (has_unk) {
        table.unk = store.find(unk_param_name(table.name));
        if (!table.unk) {
            throw checkpoint_error("checkpoint: table " + table.name + " misses its UNK vector");
        }
    }
    return table;
}

}  // namespace

void save_checkpoint(const model& m, std::ostream& out) {
    out.write(kMagic, sizeof(kMagic));
    write_u32(out, kVersion);
    write_string(out, to_text(m.cfg));

    write_u64(out, m.store.all().size());
    for (const auto& p : m.store.all()) {
        write_string(out, p.name);
        write_u8(out, p.trainable ? 1 : 0);
        write_u32(out, static_cast<std::uint32_t>(p.value.rank()));
        for (int d : p.value.shape) {
            write_u32(out, static_cast<std::uint32_t>(d));
        }
        write_doubles(out, p.value.data);
    }

    write_u64(out, 3);
    write_table(out, m.unit_pre);
    write_table(out, m.unit_tuned);
    write_table(out, m.seg_table);

    if (!out) {
        throw checkpoint_error("checkpoint: write failed");
    }
}

void save_checkpoint(const model& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw checkpoint_error("checkpoint: cannot write " + path);
    }
    save_checkpoint(m, out);
}

model load_checkpoint_stream(std::istream& in) {
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
        throw checkpoint_error("checkpoint: bad magic (not a checkpoint file)");
    }
    std::uint32_t version = read_u32(in);
    if (version != kVersion) {
        throw checkpoint_error("checkpoint: unsupported format version " + std::to_string(version));
    }
    model_config cfg = parse_config_text(read_string(in));
    if (cfg.labels.empty()) {
        throw checkpoint_error("checkpoint: config has no labels");
    }

    autodiff::parameter_store store;
    std::uint64_t num_params = read_u64(in);
    for (std::uint64_t i = 0; i < num_params; ++i) {
        std::string name = read_string(in);
        bool trainable = read_u8(in) != 0;
        std::uint32_t rank = read_u32(in);
        if (rank < 1 || rank > 2) {
            throw checkpoint_error("checkpoint: parameter " + name + " has rank " + std::to_string(rank));
        }
        std::vector<int> shape;
        std::size_t total = 1;
        for (std::uint32_t d = 0; d < rank; ++d) {
            std::uint32_t dim = read_u32(in);
            shape.push_back(static_cast<int>(dim));
            total *= dim;
        }
        std::vector<double> data(total);
        if (total && !in.read(reinterpret_cast<char*>(data.data()),
                              static_cast<std::streamsize>(total * sizeof(double)))) {
            throw checkpoint_error("checkpoint: truncated parameter " + name);
        }
        store.create(name, autodiff::tensor(std::move(shape), std::move(data)), trainable);
    }

    std::uint64_t num_tables = read_u64(in);
    if (num_tables != 3) {
        throw checkpoint_error("checkpoint: expected 3 embedding tables, found " +
                               std::to_string(num_tables));
    }
    embedding_table pre = read_table(in, store);
    embedding_table tuned = read_table(in, store);
    embedding_table seg = read_table(in, store);

    return model(model::from_checkpoint_tag{}, std::move(cfg), std::move(store), std::move(pre),
                 std::move(tuned), std::move(seg));
}

model load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw checkpoint_error("checkpoint: cannot open " + path);
    }
    return load_checkpoint_stream(in);
}

}
