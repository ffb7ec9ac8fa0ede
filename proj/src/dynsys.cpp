#include "semicross/dynsys.hpp"

#include <algorithm>

namespace semicross {

std::shared_ptr<const DynamicalSystem> DynamicalSystem::create(std::vector<CycleDesc> cycles,
                                                               std::vector<ChainDesc> chains,
                                                               std::vector<LimitDesc> limits) {
  auto sys = std::shared_ptr<DynamicalSystem>(new DynamicalSystem());
  sys->cycles_ = std::move(cycles);
  sys->chains_ = std::move(chains);
  sys->limits_ = std::move(limits);

  auto claim = [&](const std::string& name, PointKind kind, int idx) {
    if (name.empty()) throw DuplicatePoint("empty name");
    auto [it, fresh] = sys->names_.emplace(name, std::make_pair(kind, idx));
    (void)it;
    if (!fresh) throw DuplicatePoint("duplicate name: " + name);
  };
  for (int i = 0; i < (int)sys->cycles_.size(); ++i) {
    if (sys->cycles_[i].length < 1)
      throw DynSysError("cycle " + sys->cycles_[i].name + " must have positive length");
    claim(sys->cycles_[i].name, PointKind::Cycle, i);
  }
  for (int i = 0; i < (int)sys->chains_.size(); ++i) claim(sys->chains_[i].name, PointKind::Chain, i);
  for (int i = 0; i < (int)sys->limits_.size(); ++i) claim(sys->limits_[i].name, PointKind::Limit, i);

  std::vector<char> referenced(sys->limits_.size(), 0);
  auto check_end = [&](const ChainDesc& c, const ChainEnd& e) {
    if (e.infinite) return;
    if (e.limit < 0 || e.limit >= (int)sys->limits_.size())
      throw DanglingLimitRef("chain " + c.name + " references unknown limit");
    referenced[e.limit] = 1;
  };
  for (const auto& c : sys->chains_) {
    check_end(c, c.minus_end);
    check_end(c, c.plus_end);
  }
  for (int i = 0; i < (int)sys->limits_.size(); ++i)
    if (!referenced[i])
      throw OrphanLimit("limit " + sys->limits_[i].name +
                        " is not the end of any chain");
  return sys;
}

bool DynamicalSystem::contains(const Point& p) const {
  switch (p.kind) {
    case PointKind::Cycle:
      return p.owner >= 0 && p.owner < (int)cycles_.size() && p.index >= 0 &&
             p.index < cycles_[p.owner].length;
    case PointKind::Chain:
      return p.owner >= 0 && p.owner < (int)chains_.size();
    case PointKind::Limit:
      return p.owner >= 0 && p.owner < (int)limits_.size() && p.index == 0;
  }
  return false;
}

void DynamicalSystem::require(const Point& p) const {
  if (!contains(p)) throw ForeignPoint("point does not belong to the system");
}

int DynamicalSystem::cycle_index(const std::string& name) const {
  auto it = names_.find(name);
  return it != names_.end() && it->second.first == PointKind::Cycle ? it->second.second : -1;
}
int DynamicalSystem::chain_index(const std::string& name) const {
  auto it = names_.find(name);
  return it != names_.end() && it->second.first == PointKind::Chain ? it->second.second : -1;
}
int DynamicalSystem::limit_index(const std::string& name) const {
  auto it = names_.find(name);
  return it != names_.end() && it->second.first == PointKind::Limit ? it->second.second : -1;
}

Point apply_power(const DynamicalSystem& sys, const Point& p, std::int64_t k) {
  sys.require(p);
  switch (p.kind) {
    case PointKind::Cycle: {
      std::int64_t len = sys.cycle_length(p.owner);
      std::int64_t idx = (p.index - k) % len;
      if (idx < 0) idx += len;
      return Point::cycle(p.owner, idx);
    }
    case PointKind::Chain:
      return Point::chain(p.owner, p.index - k);
    case PointKind::Limit:
      return p;
  }
  throw ForeignPoint("invalid point kind");
}

std::string point_to_string(const DynamicalSystem& sys, const Point& p) {
  switch (p.kind) {
    case PointKind::Cycle:
      return sys.cycles()[p.owner].name + "[" + std::to_string(p.index) + "]";
    case PointKind::Chain:
      return sys.chains()[p.owner].name + "[" + std::to_string(p.index) + "]";
    case PointKind::Limit:
      return sys.limits()[p.owner].name;
  }
  return "?";
}

PointSet::PointSet(const DynamicalSystem& sys)
    : cycle_points_(sys.cycles().size()),
      chain_slices_(sys.chains().size()),
      limit_flags_(sys.limits().size(), 0) {}

bool PointSet::contains(const Point& p) const {
  switch (p.kind) {
    case PointKind::Cycle:
      return p.owner < (int)cycle_points_.size() && cycle_points_[p.owner].count(p.index) > 0;
    case PointKind::Chain: {
      if (p.owner >= (int)chain_slices_.size()) return false;
      const ChainSlice& s = chain_slices_[p.owner];
      bool base = p.index < 0 ? s.minus_tail : s.plus_tail;
      return base != (s.toggles.count(p.index) > 0);
    }
    case PointKind::Limit:
      return p.owner < (int)limit_flags_.size() && limit_flags_[p.owner];
  }
  return false;
}

void PointSet::insert(const Point& p) {
  switch (p.kind) {
    case PointKind::Cycle:
      cycle_points_[p.owner].insert(p.index);
      break;
    case PointKind::Chain: {
      ChainSlice& s = chain_slices_[p.owner];
      bool base = p.index < 0 ? s.minus_tail : s.plus_tail;
      if (base)
        s.toggles.erase(p.index);
      else
        s.toggles.insert(p.index);
      break;
    }
    case PointKind::Limit:
      limit_flags_[p.owner] = 1;
      break;
  }
}

void PointSet::insert_chain_tail(int chain, bool plus) {
  const ChainSlice s = chain_slices_[chain];
  ChainSlice out;
  out.minus_tail = s.minus_tail || !plus;
  out.plus_tail = s.plus_tail || plus;
  for (std::int64_t j : s.toggles) {
    bool was = (j < 0 ? s.minus_tail : s.plus_tail) != (s.toggles.count(j) > 0);
    bool covered = (j < 0) ? !plus : plus;
    bool want = covered || was;
    bool base = j < 0 ? out.minus_tail : out.plus_tail;
    if (want != base) out.toggles.insert(j);
  }
  chain_slices_[chain] = out;
}

void PointSet::insert_whole_chain(int chain) {
  chain_slices_[chain] = ChainSlice{true, true, {}};
}

void PointSet::insert_whole_cycle(const DynamicalSystem& sys, int cycle) {
  for (std::int64_t i = 0; i < sys.cycle_length(cycle); ++i) cycle_points_[cycle].insert(i);
}

bool PointSet::empty() const {
  for (const auto& c : cycle_points_)
    if (!c.empty()) return false;
  for (const auto& s : chain_slices_)
    if (s.minus_tail || s.plus_tail || !s.toggles.empty()) return false;
  for (char f : limit_flags_)
    if (f) return false;
  return true;
}

PointSet PointSet::complement(const DynamicalSystem& sys) const {
  PointSet out = *this;
  for (auto& s : out.chain_slices_) {
    s.minus_tail = !s.minus_tail;
    s.plus_tail = !s.plus_tail;
  }
  for (std::size_t c = 0; c < cycle_points_.size(); ++c) {
    std::set<std::int64_t> flipped;
    for (std::int64_t i = 0; i < sys.cycle_length((int)c); ++i)
      if (cycle_points_[c].count(i) == 0) flipped.insert(i);
    out.cycle_points_[c] = std::move(flipped);
  }
  for (std::size_t i = 0; i < out.limit_flags_.size(); ++i)
    out.limit_flags_[i] = !out.limit_flags_[i];
  return out;
}

namespace {

ChainSlice combine_slices(const ChainSlice& a, const ChainSlice& b, bool(op)(bool, bool)) {
  ChainSlice out;
  out.minus_tail = op(a.minus_tail, b.minus_tail);
  out.plus_tail = op(a.plus_tail, b.plus_tail);
  std::set<std::int64_t> idx = a.toggles;
  idx.insert(b.toggles.begin(), b.toggles.end());
  for (std::int64_t j : idx) {
    bool ina = (j < 0 ? a.minus_tail : a.plus_tail) != (a.toggles.count(j) > 0);
    bool inb = (j < 0 ? b.minus_tail : b.plus_tail) != (b.toggles.count(j) > 0);
    bool want = op(ina, inb);
    bool base = j < 0 ? out.minus_tail : out.plus_tail;
    if (want != base) out.toggles.insert(j);
  }
  return out;
}

}  // namespace

PointSet PointSet::set_union(const PointSet& o) const {
  PointSet out = *this;
  for (std::size_t c = 0; c < cycle_points_.size(); ++c)
    out.cycle_points_[c].insert(o.cycle_points_[c].begin(), o.cycle_points_[c].end());
  for (std::size_t c = 0; c < chain_slices_.size(); ++c)
    out.chain_slices_[c] =
        combine_slices(chain_slices_[c], o.chain_slices_[c], [](bool x, bool y) { return x || y; });
  for (std::size_t i = 0; i < limit_flags_.size(); ++i)
    out.limit_flags_[i] = limit_flags_[i] || o.limit_flags_[i];
  return out;
}

PointSet PointSet::set_intersection(const PointSet& o) const {
  PointSet out = *this;
  for (std::size_t c = 0; c < cycle_points_.size(); ++c) {
    std::set<std::int64_t> both;
    std::set_intersection(cycle_points_[c].begin(), cycle_points_[c].end(),
                          o.cycle_points_[c].begin(), o.cycle_points_[c].end(),
                          std::inserter(both, both.begin()));
    out.cycle_points_[c] = std::move(both);
  }
  for (std::size_t c = 0; c < chain_slices_.size(); ++c)
    out.chain_slices_[c] =
        combine_slices(chain_slices_[c], o.chain_slices_[c], [](bool x, bool y) { return x && y; });
  for (std::size_t i = 0; i < limit_flags_.size(); ++i)
    out.limit_flags_[i] = limit_flags_[i] && o.limit_flags_[i];
  return out;
}

bool PointSet::subset_of(const PointSet& o) const { return set_intersection(o) == *this; }

std::string pointset_to_string(const DynamicalSystem& sys, const PointSet& s) {
  std::string out;
  bool first = true;
  auto item = [&](const std::string& piece) {
    if (!first) out += " ";
    out += piece;
    first = false;
  };
  for (std::size_t c = 0; c < s.cycle_points().size(); ++c) {
    if (s.cycle_points()[c].empty()) continue;
    std::string piece = sys.cycles()[c].name + "{";
    bool f2 = true;
    for (auto i : s.cycle_points()[c]) {
      if (!f2) piece += ",";
      piece += std::to_string(i);
      f2 = false;
    }
    item(piece + "}");
  }
  for (std::size_t c = 0; c < s.chain_slices().size(); ++c) {
    const ChainSlice& sl = s.chain_slices()[c];
    if (!sl.minus_tail && !sl.plus_tail && sl.toggles.empty()) continue;
    std::string piece = sys.chains()[c].name + "[m=" + (sl.minus_tail ? "1" : "0") +
                        ",p=" + (sl.plus_tail ? "1" : "0");
    if (!sl.toggles.empty()) {
      piece += ",~";
      bool f2 = true;
      for (auto j : sl.toggles) {
        piece += f2 ? "" : ",";
        piece += std::to_string(j);
        f2 = false;
      }
    }
    item(piece + "]");
  }
  for (std::size_t i = 0; i < s.limit_flags().size(); ++i)
    if (s.limit_flags()[i]) item(sys.limits()[i].name);
  return first ? std::string("(empty)") : out;
}

Taxonomy taxonomy(const DynamicalSystem& sys) {
  Taxonomy t{PointSet(sys), PointSet(sys), PointSet(sys)};
  for (std::size_t c = 0; c < sys.cycles().size(); ++c) t.isolated.insert_whole_cycle(sys, (int)c);
  for (std::size_t c = 0; c < sys.chains().size(); ++c) t.isolated.insert_whole_chain((int)c);
  for (std::size_t i = 0; i < sys.limits().size(); ++i) {
    t.accumulation.insert(Point::limit((int)i));
    t.accumulation_of_isolated.insert(Point::limit((int)i));
  }
  return t;
}

PointSet recurrent_set(const DynamicalSystem& sys) {
  PointSet r(sys);
  for (std::size_t c = 0; c < sys.cycles().size(); ++c) r.insert_whole_cycle(sys, (int)c);
  for (std::size_t i = 0; i < sys.limits().size(); ++i) r.insert(Point::limit((int)i));
  return r;
}

PointSet wandering_set(const DynamicalSystem& sys) {
  PointSet w(sys);
  for (std::size_t c = 0; c < sys.chains().size(); ++c) w.insert_whole_chain((int)c);
  return w;
}

}  // namespace semicross
