#include "edgevote/synth_source.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "edgevote/parallel.hpp"
#include "edgevote/rng.hpp"

namespace edgevote {

bool SourceSpec::is_relevant(std::int64_t var) const {
  return std::binary_search(relevant.begin(), relevant.end(), var);
}

Rational SourceSpec::edge_of(std::int64_t var) const {
  const auto it = std::lower_bound(relevant.begin(), relevant.end(), var);
  if (it == relevant.end() || *it != var) return Rational(0);
  return edges[static_cast<std::size_t>(it - relevant.begin())];
}

Rational SourceSpec::agreement_prob(std::int64_t var) const {
  return Rational(1, 2) + edge_of(var);
}

bool SourceSpec::homogeneous() const {
  for (const auto& e : edges) {
    Rational a = e.num < 0 ? -e : e;
    Rational b = edges[0].num < 0 ? -edges[0] : edges[0];
    if (a != b) return false;
  }
  return true;
}

Rational SourceSpec::gamma_magnitude() const {
  if (edges.empty()) return Rational(0);
  return edges[0].num < 0 ? -edges[0] : edges[0];
}

std::int64_t SourceSpec::block_of(std::int64_t var) const {
  const auto it = std::lower_bound(relevant.begin(), relevant.end(), var);
  if (it == relevant.end() || *it != var) return -1;
  const std::int64_t pos = it - relevant.begin();
  return clique_r > 0 ? pos / (clique_r + 1) : pos;
}

std::uint64_t SourceSpec::fingerprint() const {
  std::uint64_t h = 0x45564F5445u;  // stable tag
  auto fold = [&h](std::uint64_t x) { h = splitmix64(h ^ x); };
  fold(static_cast<std::uint64_t>(total_variables));
  fold(static_cast<std::uint64_t>(clique_r));
  fold(relevant.size());
  for (std::size_t i = 0; i < relevant.size(); ++i) {
    fold(static_cast<std::uint64_t>(relevant[i]));
    fold(static_cast<std::uint64_t>(edges[i].num));
    fold(static_cast<std::uint64_t>(edges[i].den));
  }
  return h;
}

namespace {

void check_edges(const SourceSpec& spec) {
  if (spec.total_variables < 1) throw std::invalid_argument("SourceSpec: N >= 1 required");
  if (spec.relevant.size() != spec.edges.size())
    throw std::invalid_argument("SourceSpec: relevant/edge size mismatch");
  for (std::size_t i = 0; i < spec.relevant.size(); ++i) {
    if (spec.relevant[i] < 0 || spec.relevant[i] >= spec.total_variables)
      throw std::invalid_argument("SourceSpec: relevant index out of range");
    if (i > 0 && spec.relevant[i] <= spec.relevant[i - 1])
      throw std::invalid_argument("SourceSpec: relevant indices must be strictly increasing");
    Rational mag = spec.edges[i].num < 0 ? -spec.edges[i] : spec.edges[i];
    if (mag.is_zero() || mag >= Rational(1, 2))
      throw std::invalid_argument("SourceSpec: edges must satisfy 0 < |gamma| < 1/2");
  }
  if (spec.clique_r < 0) throw std::invalid_argument("SourceSpec: clique_r >= 0 required");
  if (spec.clique_r > 0 && spec.relevant_count() % (spec.clique_r + 1) != 0)
    throw std::invalid_argument("SourceSpec: clique size r+1 must divide K");
}

}  // namespace

SourceSpec make_spec(std::int64_t total_variables, std::int64_t relevant_count,
                     const Rational& gamma, Polarity polarity, std::int64_t clique_r) {
  if (relevant_count < 1 || relevant_count > total_variables)
    throw std::invalid_argument("make_spec: 1 <= K <= N required");
  if (gamma.num <= 0 || gamma >= Rational(1, 2))
    throw std::invalid_argument("make_spec: 0 < gamma < 1/2 required");
  SourceSpec spec;
  spec.total_variables = total_variables;
  spec.clique_r = clique_r;
  spec.relevant.resize(relevant_count);
  spec.edges.resize(relevant_count);
  const std::int64_t positives =
      polarity == Polarity::all_positive ? relevant_count : (relevant_count + 1) / 2;
  for (std::int64_t i = 0; i < relevant_count; ++i) {
    spec.relevant[i] = i;
    spec.edges[i] = i < positives ? gamma : -gamma;
  }
  check_edges(spec);
  return spec;
}

SourceSpec make_spec_explicit(std::int64_t total_variables, std::vector<std::int64_t> relevant,
                              std::vector<Rational> edges, std::int64_t clique_r) {
  SourceSpec spec;
  spec.total_variables = total_variables;
  spec.relevant = std::move(relevant);
  spec.edges = std::move(edges);
  spec.clique_r = clique_r;
  check_edges(spec);
  return spec;
}

SourceSpec make_hetero_spec(std::int64_t total_variables, std::int64_t relevant_count,
                            const Rational& gamma_min, const Rational& gamma_max,
                            EdgeAssignment assignment,
                            const std::vector<Rational>& explicit_edges) {
  if (gamma_min.num <= 0 || gamma_min > gamma_max || gamma_max >= Rational(1, 2))
    throw std::invalid_argument("make_hetero_spec: 0 < gamma_min <= gamma_max < 1/2 required");
  if (relevant_count < 1 || relevant_count > total_variables)
    throw std::invalid_argument("make_hetero_spec: 1 <= K <= N required");
  SourceSpec spec;
  spec.total_variables = total_variables;
  spec.relevant.resize(relevant_count);
  for (std::int64_t i = 0; i < relevant_count; ++i) spec.relevant[i] = i;
  if (assignment == EdgeAssignment::explicit_list) {
    if (static_cast<std::int64_t>(explicit_edges.size()) != relevant_count)
      throw std::invalid_argument("make_hetero_spec: explicit edge list must have K entries");
    for (const auto& e : explicit_edges)
      if (e < gamma_min || e > gamma_max)
        throw std::invalid_argument("make_hetero_spec: explicit edge outside [gamma_min, gamma_max]");
    spec.edges = explicit_edges;
  } else {
    spec.edges.resize(relevant_count);
    if (relevant_count == 1) {
      spec.edges[0] = gamma_min;
    } else {
      const Rational span = gamma_max - gamma_min;
      for (std::int64_t i = 0; i < relevant_count; ++i)
        spec.edges[i] = gamma_min + span * Rational(i, relevant_count - 1);
    }
  }
  check_edges(spec);
  return spec;
}

std::int64_t Dataset::agreement_count(std::int64_t var) const {
  const std::uint64_t* col = values.data() + var * words_per_column;
  std::int64_t disagreements = 0;
  for (std::int64_t w = 0; w < words_per_column; ++w)
    disagreements += std::popcount(col[w] ^ labels[w]);
  return example_count - disagreements;
}

Dataset draw_dataset(const SourceSpec& spec, std::int64_t example_count, std::uint64_t seed) {
  check_edges(spec);
  if (example_count < 1) throw std::invalid_argument("draw_dataset: m >= 1 required");
  Dataset ds;
  ds.example_count = example_count;
  ds.variable_count = spec.total_variables;
  ds.relevant_count = spec.relevant_count();
  ds.seed = seed;
  ds.spec_fingerprint = spec.fingerprint();
  ds.words_per_column = (example_count + 63) / 64;
  ds.labels.assign(ds.words_per_column, 0);
  ds.values.assign(ds.words_per_column * spec.total_variables, 0);

  for (std::int64_t e = 0; e < example_count; ++e)
    if (fair_bit(mix(seed, kStreamLabel, e))) ds.labels[e >> 6] |= 1ULL << (e & 63);

  const std::uint64_t tail_mask =
      (example_count & 63) ? ((1ULL << (example_count & 63)) - 1) : ~0ULL;
  const Rational half(1, 2);

  parallel_for(spec.total_variables, [&](std::int64_t v) {
    const Rational agree_prob = half + spec.edge_of(v);
    const bool clique = spec.clique_r > 0 && spec.is_relevant(v);
    const std::int64_t block = clique ? spec.block_of(v) : 0;
    std::uint64_t* col = ds.values.data() + v * ds.words_per_column;
    for (std::int64_t w = 0; w < ds.words_per_column; ++w) {
      std::uint64_t agree_word = 0;
      const std::int64_t base = w << 6;
      const std::int64_t count = std::min<std::int64_t>(64, example_count - base);
      for (std::int64_t b = 0; b < count; ++b) {
        const std::int64_t e = base + b;
        const std::uint64_t word = clique ? mix(seed, kStreamBlock, e, block)
                                          : mix(seed, kStreamValue, e, v);
        if (bernoulli_bit(word, agree_prob)) agree_word |= 1ULL << b;
      }
      // value equals label exactly where the agreement bit is set
      std::uint64_t value_word = ~(ds.labels[w] ^ agree_word);
      if (w == ds.words_per_column - 1) value_word &= tail_mask;
      col[w] = value_word;
    }
  });
  return ds;
}

namespace {
constexpr char kMagic[4] = {'E', 'V', 'D', '1'};

void write_u64(std::ofstream& out, std::uint64_t x) {
  unsigned char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(x >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_u64(std::ifstream& in) {
  unsigned char buf[8];
  in.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return x;
}
}  // namespace

void save_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_dataset: cannot open " + path);
  out.write(kMagic, 4);
  write_u64(out, static_cast<std::uint64_t>(ds.variable_count));
  write_u64(out, static_cast<std::uint64_t>(ds.relevant_count));
  write_u64(out, static_cast<std::uint64_t>(ds.example_count));
  write_u64(out, ds.seed);
  write_u64(out, ds.spec_fingerprint);

  const std::int64_t label_bytes = (ds.example_count + 7) / 8;
  std::vector<unsigned char> buf(label_bytes, 0);
  for (std::int64_t e = 0; e < ds.example_count; ++e)
    if (ds.label(e)) buf[e >> 3] |= 1u << (e & 7);
  out.write(reinterpret_cast<const char*>(buf.data()), label_bytes);

  const std::int64_t row_bytes = (ds.variable_count + 7) / 8;
  std::vector<unsigned char> row(row_bytes);
  for (std::int64_t e = 0; e < ds.example_count; ++e) {
    std::fill(row.begin(), row.end(), 0);
    for (std::int64_t v = 0; v < ds.variable_count; ++v)
      if (ds.value(e, v)) row[v >> 3] |= 1u << (v & 7);
    out.write(reinterpret_cast<const char*>(row.data()), row_bytes);
  }
  if (!out) throw std::runtime_error("save_dataset: write failed for " + path);
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_dataset: cannot open " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("load_dataset: bad magic in " + path);
  Dataset ds;
  ds.variable_count = static_cast<std::int64_t>(read_u64(in));
  ds.relevant_count = static_cast<std::int64_t>(read_u64(in));
  ds.example_count = static_cast<std::int64_t>(read_u64(in));
  ds.seed = read_u64(in);
  ds.spec_fingerprint = read_u64(in);
  if (!in || ds.example_count < 1 || ds.variable_count < 1)
    throw std::runtime_error("load_dataset: corrupt header in " + path);
  ds.words_per_column = (ds.example_count + 63) / 64;
  ds.labels.assign(ds.words_per_column, 0);
  ds.values.assign(ds.words_per_column * ds.variable_count, 0);

  const std::int64_t label_bytes = (ds.example_count + 7) / 8;
  std::vector<unsigned char> buf(label_bytes);
  in.read(reinterpret_cast<char*>(buf.data()), label_bytes);
  for (std::int64_t e = 0; e < ds.example_count; ++e)
    if ((buf[e >> 3] >> (e & 7)) & 1u) ds.labels[e >> 6] |= 1ULL << (e & 63);

  const std::int64_t row_bytes = (ds.variable_count + 7) / 8;
  std::vector<unsigned char> row(row_bytes);
  for (std::int64_t e = 0; e < ds.example_count; ++e) {
    in.read(reinterpret_cast<char*>(row.data()), row_bytes);
    for (std::int64_t v = 0; v < ds.variable_count; ++v)
      if ((row[v >> 3] >> (v & 7)) & 1u)
        ds.values[v * ds.words_per_column + (e >> 6)] |= 1ULL << (e & 63);
  }
  if (!in) throw std::runtime_error("load_dataset: truncated file " + path);
  return ds;
}

}  // namespace edgevote
