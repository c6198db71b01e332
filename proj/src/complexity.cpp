#include "kolab/complexity.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "kolab/decompressor.hpp"
#include "kolab/error.hpp"

namespace kolab {

std::string_view machine_name(MachineId id) noexcept {
  switch (id) {
    case MachineId::VOpt: return "vopt";
    case MachineId::V: return "v";
    case MachineId::U: return "u";
    case MachineId::W: return "w";
  }
  return "?";
}

MachineId parse_machine(std::string_view text) {
  if (text == "vopt") return MachineId::VOpt;
  if (text == "v") return MachineId::V;
  if (text == "u") return MachineId::U;
  if (text == "w") return MachineId::W;
  throw Error("unknown machine '" + std::string(text) + "' (expected vopt, v, u or w)");
}

bool takes_condition(MachineId id) noexcept { return id == MachineId::VOpt || id == MachineId::V; }

ExecOutcome v_decode(const BitStr& d, const BitStr& cond, const MachineBudgets& budgets) {
  return v_opt(d, d.size() & ~std::size_t{1}, cond, budgets);
}

ExecOutcome run_machine(MachineId id, const BitStr& d, const BitStr& cond, const SchemeParams& params,
                        RunCounter* counter) {
  switch (id) {
    case MachineId::VOpt:
      if (counter) ++counter->runs;
      return v_opt(d, cond, params.budgets);
    case MachineId::V:
      if (counter) ++counter->runs;
      return v_decode(d, cond, params.budgets);
    case MachineId::U:
      return u_decode(d, params, counter);
    case MachineId::W:
      return w_decode(d, params.budgets, counter);
  }
  return ExecOutcome::stuck();
}

std::optional<std::uint32_t> ComplexityTable::complexity_of(const BitStr& x) const {
  const auto* e = find(x);
  if (!e) return std::nullopt;
  return e->length;
}

const TableEntry* ComplexityTable::find(const BitStr& x) const {
  if (x.size() > max_output_length_) return nullptr;
  auto it = entries_.find(x);
  return it == entries_.end() ? nullptr : &it->second;
}

BitStr ComplexityTable::witness(const BitStr& x, const SchemeParams& params) const {
  const auto* e = find(x);
  if (!e) throw Error("no description of length <= " + std::to_string(bound_) + " for " + to_hex(x));
  if (e->witness) return *e->witness;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << e->length); ++code) {
    BitStr d = BitStr::from_uint(code, e->length);
    auto out = run_machine(machine_, d, cond_, params);
    if (out.halted() && out.output == x) return d;
  }
  throw Error("cached complexity for " + to_hex(x) + " has no witness; cache is inconsistent");
}

std::uint64_t ComplexityTable::runs_below(std::size_t length) const {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < std::min(length, runs_by_length_.size()); ++i) total += runs_by_length_[i];
  return total;
}

std::vector<std::pair<BitStr, std::uint32_t>> ComplexityTable::sorted_entries() const {
  std::vector<std::pair<BitStr, std::uint32_t>> out;
  out.reserve(entries_.size());
  for (const auto& [x, e] : entries_) out.emplace_back(x, e.length);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void ComplexityTable::insert(const BitStr& output, std::uint32_t length, std::optional<BitStr> witness) {
  auto [it, inserted] = entries_.try_emplace(output, TableEntry{length, std::move(witness)});
  if (!inserted && length < it->second.length) it->second = TableEntry{length, std::move(witness)};
  max_output_length_ = std::max(max_output_length_, output.size());
}

bool operator==(const ComplexityTable& a, const ComplexityTable& b) {
  if (a.machine_ != b.machine_ || a.cond_ != b.cond_ || a.bound_ != b.bound_ ||
      a.params_hash_ != b.params_hash_ || a.entries_.size() != b.entries_.size()) {
    return false;
  }
  for (const auto& [x, e] : a.entries_) {
    auto it = b.entries_.find(x);
    if (it == b.entries_.end() || it->second.length != e.length) return false;
  }
  return true;
}

namespace {

struct ChunkResult {
  std::vector<std::pair<BitStr, std::uint64_t>> halted;  // output, description code
  std::uint64_t runs = 0;
};

ChunkResult run_chunk(MachineId id, const BitStr& cond, const SchemeParams& params, unsigned length,
                      std::uint64_t lo, std::uint64_t hi) {
  ChunkResult result;
  RunCounter counter;
  for (std::uint64_t code = lo; code < hi; ++code) {
    auto out = run_machine(id, BitStr::from_uint(code, length), cond, params, &counter);
    if (out.halted()) result.halted.emplace_back(std::move(out.output), code);
  }
  result.runs = counter.runs;
  return result;
}

}  // namespace

ComplexityTable build_table(MachineId id, const BitStr& cond, unsigned bound, const SchemeParams& params,
                            unsigned threads) {
  if (bound > kMaxEnumBound) throw Error("table bound " + std::to_string(bound) + " above cap 26");
  if (!takes_condition(id) && !cond.empty()) {
    throw Error(std::string(machine_name(id)) + " takes no condition");
  }
  threads = std::max(1U, threads);
  ComplexityTable table(id, cond, bound, params.hash());
  std::vector<std::uint64_t> runs(bound + 1, 0);

  for (unsigned length = 0; length <= bound; ++length) {
    const std::uint64_t count = std::uint64_t{1} << length;
    const unsigned workers = count < 4096 ? 1U : threads;
    std::vector<ChunkResult> chunks(workers);
    if (workers == 1) {
      chunks[0] = run_chunk(id, cond, params, length, 0, count);
    } else {
      std::vector<std::thread> pool;
      const std::uint64_t step = (count + workers - 1) / workers;
      for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t lo = std::min(count, w * step);
        const std::uint64_t hi = std::min(count, lo + step);
        pool.emplace_back([&, w, lo, hi] { chunks[w] = run_chunk(id, cond, params, length, lo, hi); });
      }
      for (auto& t : pool) t.join();
    }
    // Chunks are merged in code order, so the first insertion per output is
    // the shortlex-least description regardless of scheduling.
    for (auto& chunk : chunks) {
      runs[length] += chunk.runs;
      for (auto& [out, code] : chunk.halted) {
        if (!table.find(out)) table.insert(out, length, BitStr::from_uint(code, length));
      }
    }
  }
  table.set_runs_by_length(std::move(runs));
  return table;
}

std::string serialize_cache(const ComplexityTable& table) {
  std::ostringstream os;
  os << "KCACHE v1 machine=" << machine_name(table.machine())
     << " cond=" << (takes_condition(table.machine()) ? to_hex(table.cond()) : std::string("-"))
     << " bound=" << table.bound() << " params=" << hex64(table.params_hash()) << "\n";
  for (const auto& [x, c] : table.sorted_entries()) os << to_hex(x) << " " << c << "\n";
  return os.str();
}

void save_cache(const ComplexityTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache file " + tmp);
    out << serialize_cache(table);
    if (!out) throw Error("failed writing cache file " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

ComplexityTable parse_cache(std::string_view text, const SchemeParams& params) {
  std::istringstream is{std::string(text)};
  std::string line;
  if (!std::getline(is, line)) throw Error("empty cache file");
  std::istringstream header(line);
  std::string magic, version, machine_kv, cond_kv, bound_kv, params_kv;
  header >> magic >> version >> machine_kv >> cond_kv >> bound_kv >> params_kv;
  auto value_of = [](const std::string& kv, std::string_view key) {
    if (kv.rfind(std::string(key) + "=", 0) != 0) throw Error("malformed cache header field '" + kv + "'");
    return kv.substr(key.size() + 1);
  };
  if (magic != "KCACHE" || version != "v1") throw Error("not a KCACHE v1 file");
  const MachineId id = parse_machine(value_of(machine_kv, "machine"));
  const std::string cond_text = value_of(cond_kv, "cond");
  const BitStr cond = cond_text == "-" ? BitStr{} : parse_hex(cond_text);
  const unsigned bound = static_cast<unsigned>(std::stoul(value_of(bound_kv, "bound")));
  const std::string hash_text = value_of(params_kv, "params");
  if (hash_text != hex64(params.hash())) {
    throw StaleCacheError("cache params hash " + hash_text + " does not match current " + hex64(params.hash()));
  }
  ComplexityTable table(id, cond, bound, params.hash());
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) throw Error("malformed cache line " + std::to_string(line_no));
    const BitStr x = parse_hex(std::string_view(line).substr(0, space));
    const unsigned long c = std::stoul(line.substr(space + 1));
    if (c > bound) throw Error("cache line " + std::to_string(line_no) + " exceeds bound");
    table.insert(x, static_cast<std::uint32_t>(c), std::nullopt);
  }
  return table;
}

ComplexityTable load_cache(const std::filesystem::path& path, const SchemeParams& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read cache file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cache(buf.str(), params);
}

std::string cache_file_name(MachineId id, const BitStr& cond, unsigned bound, const SchemeParams& params) {
  std::string cond_part = takes_condition(id) ? to_hex(cond) : std::string("-");
  std::replace(cond_part.begin(), cond_part.end(), ':', '_');
  return std::string(machine_name(id)) + "-" + cond_part + "-b" + std::to_string(bound) + "-" +
         hex64(params.hash()) + ".kcache";
}

ComplexityTable cached_table(const std::filesystem::path& dir, MachineId id, const BitStr& cond, unsigned bound,
                             const SchemeParams& params, unsigned threads) {
  const auto path = dir / cache_file_name(id, cond, bound, params);
  if (std::filesystem::exists(path)) {
    try {
      return load_cache(path, params);
    } catch (const StaleCacheError&) {
      // rebuilt below
    }
  }
  auto table = build_table(id, cond, bound, params, threads);
  save_cache(table, path);
  return table;
}

}  // namespace kolab
