#include "hornforge/saturation.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "hornforge/kbo.hpp"

namespace hornforge {

std::string Strategy::to_string() const {
  std::ostringstream os;
  os << age_ratio << ':' << weight_ratio << (use_ordering ? ":ordered" : ":unordered");
  return os.str();
}

Strategy Strategy::parse(const std::string& text) {
  Strategy s;
  size_t c1 = text.find(':');
  if (c1 == std::string::npos) throw std::runtime_error("bad strategy: " + text);
  size_t c2 = text.find(':', c1 + 1);
  s.age_ratio = std::stoi(text.substr(0, c1));
  s.weight_ratio = std::stoi(
      text.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
  if (c2 != std::string::npos) {
    std::string mode = text.substr(c2 + 1);
    if (mode == "ordered") {
      s.use_ordering = true;
    } else if (mode == "unordered") {
      s.use_ordering = false;
    } else {
      throw std::runtime_error("bad strategy mode: " + mode);
    }
  }
  if (s.age_ratio < 0 || s.weight_ratio < 0 || (s.age_ratio == 0 && s.weight_ratio == 0))
    throw std::runtime_error("strategy ratio must not be 0:0");
  return s;
}

std::vector<Strategy> default_portfolio() {
  Strategy a{1, 1, false};
  Strategy b{1, 4, true};
  Strategy c{4, 1, true};
  return {a, b, c};
}

namespace {

bool tautological(const HornClause& c) {
  if (!c.head().is_atom()) return false;
  const Atom& h = *c.head().atom;
  if (h.is_equation() && h.lhs() == h.rhs()) return true;
  for (const Atom& b : c.body())
    if (b.equal_modulo_orientation(h)) return true;
  return false;
}

struct Saturator {
  const Strategy& strategy;
  const std::atomic<bool>* cancel;
  Kbo ord;

  // One entry per derivation step. Entries that were simplified away or
  // subsumed are dead for the search but stay in the derivation.
  struct Entry {
    int id;
    HornClause clause;
    size_t weight;
    bool live = false;    // participates in search (passive or active)
    bool active = false;
  };
  Derivation derivation;
  std::vector<Entry> entries;
  std::vector<size_t> unit_eqs;                 // indices of live unit equations
  // oriented rewrite candidates by root symbol: (entry index, flipped)
  std::map<std::string, std::vector<std::pair<size_t, bool>>> demod_index;
  std::deque<size_t> age_queue;                 // passive by age (lazy)
  std::set<std::pair<size_t, size_t>> weight_queue;  // (weight, index), passive
  size_t generated = 0;
  size_t kept = 0;
  int pick_phase = 0;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  Saturator(const Signature& sig, const Strategy& st, const std::atomic<bool>* c)
      : strategy(st), cancel(c), ord(sig) {}

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  bool out_of_budget() const {
    if (cancel && cancel->load(std::memory_order_relaxed)) return true;
    if (kept > strategy.max_clauses) return true;
    return elapsed() > strategy.max_seconds;
  }

  size_t record(HornClause clause, Justification just, const char* role) {
    Step s;
    s.id = static_cast<int>(derivation.steps.size()) + 1;
    s.clause = clause;
    s.just = std::move(just);
    s.role = role;
    derivation.steps.push_back(std::move(s));
    Entry e;
    e.id = static_cast<int>(derivation.steps.size());
    e.weight = clause.weight();
    e.clause = std::move(clause);
    entries.push_back(std::move(e));
    return entries.size() - 1;
  }

  // One indexed rewrite of the clause at idx: scans subterms innermost-first
  // and consults the demodulation index by root symbol. Returns the unit used.
  std::optional<std::pair<HornClause, size_t>> rewrite_once(size_t idx) {
    const HornClause& target = entries[idx].clause;
    struct Slot {
      const Atom* atom;
      size_t index;
      bool in_head;
    };
    std::vector<Slot> slots;
    for (size_t i = 0; i < target.body().size(); ++i)
      slots.push_back({&target.body()[i], i, false});
    if (target.head().is_atom())
      slots.push_back({&*target.head().atom, target.body().size(), true});
    for (const Slot& slot : slots) {
      std::vector<std::vector<size_t>> positions;
      std::function<void(const Term&, std::vector<size_t>&)> post =
          [&](const Term& t, std::vector<size_t>& path) {
            if (t.is_var()) return;
            for (size_t i = 0; i < t.args().size(); ++i) {
              path.push_back(i);
              post(t.args()[i], path);
              path.pop_back();
            }
            positions.push_back(path);
          };
      for (size_t ai = 0; ai < slot.atom->args().size(); ++ai) {
        std::vector<size_t> path{ai};
        post(slot.atom->args()[ai], path);
      }
      for (const auto& pos : positions) {
        const Term& sub = slot.atom->args()[pos[0]].at(
            std::span<const size_t>(pos.data() + 1, pos.size() - 1));
        auto bucket = demod_index.find(sub.name());
        if (bucket == demod_index.end()) continue;
        for (const auto& [u, flip] : bucket->second) {
          if (!entries[u].live || u == idx) continue;
          const Atom& eq = *entries[u].clause.head().atom;
          const Term& l = flip ? eq.rhs() : eq.lhs();
          const Term& r = flip ? eq.lhs() : eq.rhs();
          Matcher theta;
          if (!match_into(l, sub, theta)) continue;
          Term lhs_inst = theta.apply(l);
          Term rhs_inst = theta.apply(r);
          if (!ord.greater(lhs_inst, rhs_inst)) continue;
          std::span<const size_t> tail(pos.data() + 1, pos.size() - 1);
          Term rewritten = slot.atom->args()[pos[0]].replace_at(tail, rhs_inst);
          std::vector<Term> args(slot.atom->args().begin(), slot.atom->args().end());
          args[pos[0]] = rewritten;
          Atom new_atom = slot.atom->is_equation()
                              ? Atom::equation(args[0], args[1])
                              : Atom::predicate(slot.atom->predicate_name(), std::move(args));
          std::vector<Atom> body = target.body();
          Head head = target.head();
          if (slot.in_head) {
            head = Head::make_atom(std::move(new_atom));
          } else {
            body[slot.index] = std::move(new_atom);
          }
          return std::make_pair(HornClause::close(std::move(body), std::move(head)), u);
        }
      }
    }
    return std::nullopt;
  }

  // Forward demodulation to a unit normal form; one derivation step per
  // rewrite. Returns the final index.
  size_t simplify(size_t idx) {
    for (;;) {
      auto step = rewrite_once(idx);
      if (!step) return idx;
      size_t nidx = record(step->first,
                           JustInference{"forward_demodulation",
                                         {entries[idx].id, entries[step->second].id}},
                           "plain");
      entries[idx].live = false;
      idx = nidx;
    }
  }

  bool forward_subsumed(size_t idx) const {
    const Entry& e = entries[idx];
    for (size_t i = 0; i < entries.size(); ++i) {
      if (i == idx || !entries[i].live) continue;
      const Entry& g = entries[i];
      if (g.clause.body().size() > e.clause.body().size() || g.weight > e.weight) continue;
      if (g.clause.head().kind != e.clause.head().kind) continue;
      if (subsumes(g.clause, e.clause)) return true;
    }
    return false;
  }

  void enqueue(size_t idx) {
    entries[idx].live = true;
    ++kept;
    age_queue.push_back(idx);
    weight_queue.emplace(entries[idx].weight, idx);
    if (entries[idx].clause.is_unit_equation()) {
      unit_eqs.push_back(idx);
      const Atom& eq = *entries[idx].clause.head().atom;
      for (bool flip : {false, true}) {
        const Term& l = flip ? eq.rhs() : eq.lhs();
        const Term& r = flip ? eq.lhs() : eq.rhs();
        if (l.is_var()) continue;
        // only orientations whose right side cannot introduce variables
        std::vector<std::pair<std::string, std::string>> lv, rv;
        l.collect_vars(lv);
        r.collect_vars(rv);
        bool covered = true;
        for (const auto& [n, srt] : rv) {
          bool found = false;
          for (const auto& [ln, ls] : lv) found = found || ln == n;
          covered = covered && found;
        }
        if (!covered) continue;
        demod_index[l.name()].emplace_back(idx, flip);
      }
    }
  }

  // Syntactically duplicate body atoms are merged eagerly; each merge is a
  // recorded factoring step. Keeps ground saturation finite.
  size_t dedupe_body(size_t idx) {
    for (;;) {
      const HornClause& c = entries[idx].clause;
      bool merged = false;
      for (size_t i = 0; i < c.body().size() && !merged; ++i) {
        for (size_t j = i + 1; j < c.body().size() && !merged; ++j) {
          if (!(c.body()[i] == c.body()[j])) continue;
          FreshNames fresh;
          auto app = factoring(c, i, j, false, fresh);
          if (!app) continue;
          size_t nidx = record(app->conclusion,
                               JustInference{"factoring", {entries[idx].id}}, "plain");
          entries[idx].live = false;
          idx = nidx;
          merged = true;
        }
      }
      if (!merged) return idx;
    }
  }

  // Returns the refutation index when the empty clause appeared.
  std::optional<size_t> insert(size_t idx) {
    if (entries[idx].clause.is_empty_goal()) return idx;
    idx = simplify(idx);
    idx = dedupe_body(idx);
    const HornClause& c = entries[idx].clause;
    if (c.is_empty_goal()) return idx;
    if (tautological(c) || forward_subsumed(idx)) {
      entries[idx].live = false;
      return std::nullopt;
    }
    enqueue(idx);
    return std::nullopt;
  }

  std::optional<size_t> select() {
    auto passive = [&](size_t i) { return entries[i].live && !entries[i].active; };
    while (!age_queue.empty() && !passive(age_queue.front())) age_queue.pop_front();
    while (!weight_queue.empty() && !passive(weight_queue.begin()->second))
      weight_queue.erase(weight_queue.begin());
    if (age_queue.empty() && weight_queue.empty()) return std::nullopt;

    int cycle = strategy.age_ratio + strategy.weight_ratio;
    bool by_age = weight_queue.empty() ||
                  (!age_queue.empty() && (pick_phase % cycle) < strategy.age_ratio);
    ++pick_phase;
    size_t idx;
    if (by_age) {
      idx = age_queue.front();
      age_queue.pop_front();
    } else {
      idx = weight_queue.begin()->second;
      weight_queue.erase(weight_queue.begin());
    }
    return idx;
  }

  // All superpositions between the clauses at eq/target indices. Clause data
  // is copied up front: record() reallocates the entry table.
  void superpose(size_t eq_idx, size_t target_idx, std::vector<size_t>& out) {
    const HornClause eq_clause = entries[eq_idx].clause;
    const HornClause target = entries[target_idx].clause;
    const int eq_id = entries[eq_idx].id;
    const int target_id = entries[target_idx].id;
    if (!eq_clause.head().is_atom() || !eq_clause.head().atom->is_equation()) return;
    FreshNames fresh;
    for (bool flip : {false, true}) {
      const Atom& eq = *eq_clause.head().atom;
      const Term& l = flip ? eq.rhs() : eq.lhs();
      const Term& r = flip ? eq.lhs() : eq.rhs();
      if (l.is_var()) continue;  // no superposition from a variable side
      if (strategy.use_ordering) {
        Kbo::Cmp c = ord.compare(l, r);
        if (c == Kbo::Cmp::kLess || c == Kbo::Cmp::kEqual) continue;
      }
      if (!flip && eq.lhs() == eq.rhs()) continue;
      auto try_loc = [&](const Location& loc) {
        auto app = superposition(eq_clause, flip, target, loc, fresh, /*simultaneous=*/true);
        if (!app) return;
        if (strategy.use_ordering) {
          Kbo::Cmp c = ord.compare(app->redex, app->replacement);
          if (c == Kbo::Cmp::kLess || c == Kbo::Cmp::kEqual) return;
        }
        out.push_back(
            record(app->conclusion, JustInference{"superposition", {target_id, eq_id}}, "plain"));
      };
      for (size_t bi = 0; bi < target.body().size(); ++bi) {
        for_each_position(target.body()[bi], [&](const Term&, const std::vector<size_t>& p) {
          Location loc;
          loc.in_head = false;
          loc.body_index = bi;
          loc.path = p;
          try_loc(loc);
          return true;
        });
      }
      if (target.head().is_atom()) {
        for_each_position(*target.head().atom, [&](const Term&, const std::vector<size_t>& p) {
          Location loc;
          loc.in_head = true;
          loc.path = p;
          try_loc(loc);
          return true;
        });
      }
    }
  }

  void resolve(size_t left_idx, size_t right_idx, std::vector<size_t>& out) {
    const HornClause left = entries[left_idx].clause;
    const HornClause right = entries[right_idx].clause;
    const int left_id = entries[left_idx].id;
    const int right_id = entries[right_idx].id;
    if (!left.head().is_atom()) return;
    FreshNames fresh;
    for (size_t bi = 0; bi < right.body().size(); ++bi) {
      for (bool flip : {false, true}) {
        if (flip && !right.body()[bi].is_equation()) continue;
        auto app = resolution(left, right, bi, flip, fresh);
        if (!app) continue;
        out.push_back(
            record(app->conclusion, JustInference{"resolution", {left_id, right_id}}, "plain"));
      }
    }
  }

  void infer_with(size_t g, std::vector<size_t>& out) {
    FreshNames fresh;
    const HornClause gc = entries[g].clause;
    const int gid = entries[g].id;
    for (size_t i = 0; i < gc.body().size(); ++i) {
      if (gc.body()[i].is_equation()) {
        if (auto app = equality_resolution(gc, i))
          out.push_back(
              record(app->conclusion, JustInference{"equality_resolution", {gid}}, "plain"));
      }
      for (size_t j = i + 1; j < gc.body().size(); ++j) {
        for (bool flip : {false, true}) {
          if (flip && !gc.body()[j].is_equation()) continue;
          if (auto app = factoring(gc, i, j, flip, fresh))
            out.push_back(record(app->conclusion, JustInference{"factoring", {gid}}, "plain"));
        }
      }
    }
    size_t n = entries.size();
    for (size_t a = 0; a < n; ++a) {
      if (!entries[a].active || !entries[a].live) continue;
      resolve(g, a, out);
      if (a != g) resolve(a, g, out);
      superpose(g, a, out);
      if (a != g) superpose(a, g, out);
    }
  }

  // Inter-reduction on activating g: when g is a unit equation, rewrite the
  // clauses it reduces and retire clauses it subsumes.
  std::optional<size_t> backward_simplify(size_t g) {
    const bool is_unit = entries[g].clause.is_unit_equation();
    size_t n = entries.size();
    for (size_t i = 0; i < n; ++i) {
      if (i == g || !entries[i].live) continue;
      if (entries[g].weight <= entries[i].weight &&
          entries[g].clause.body().size() <= entries[i].clause.body().size() &&
          entries[g].clause.head().kind == entries[i].clause.head().kind &&
          subsumes(entries[g].clause, entries[i].clause)) {
        entries[i].live = false;
        continue;
      }
      if (!is_unit) continue;
      auto app = demodulate(entries[g].clause, entries[i].clause, ord);
      if (!app) continue;
      size_t nidx = record(app->conclusion,
                           JustInference{"backward_demodulation", {entries[i].id, entries[g].id}},
                           "plain");
      entries[i].live = false;
      if (auto refut = insert(nidx)) return refut;
    }
    return std::nullopt;
  }

  SaturationResult finish(SaturationResult::Outcome outcome, std::optional<size_t> refut) {
    SaturationResult r;
    r.outcome = outcome;
    r.generated = generated;
    r.kept = kept;
    r.seconds = elapsed();
    if (refut) {
      Derivation full = derivation;
      full.steps.resize(*refut + 1);
      r.derivation = full.pruned_to_refutation();
    }
    return r;
  }

  SaturationResult run(const std::vector<Step>& inputs) {
    for (const Step& s : inputs) {
      size_t idx = record(s.clause, s.just, s.role.c_str());
      if (entries[idx].clause.is_empty_goal())
        return finish(SaturationResult::Outcome::kRefutation, idx);
      enqueue(idx);
    }
    for (;;) {
      if (out_of_budget()) return finish(SaturationResult::Outcome::kBudget, std::nullopt);
      auto pick = select();
      if (!pick) return finish(SaturationResult::Outcome::kSaturated, std::nullopt);
      size_t g = *pick;
      // Late simplification against units and clauses found since queueing.
      size_t gs = simplify(g);
      if (gs != g) {
        if (entries[gs].clause.is_empty_goal())
          return finish(SaturationResult::Outcome::kRefutation, gs);
        if (auto refut = insert(gs)) return finish(SaturationResult::Outcome::kRefutation, *refut);
        continue;
      }
      if (forward_subsumed(g)) {
        entries[g].live = false;
        continue;
      }
      entries[g].active = true;
      if (auto refut = backward_simplify(g)) return finish(SaturationResult::Outcome::kRefutation, *refut);
      if (!entries[g].live) continue;  // g simplified itself away
      std::vector<size_t> out;
      infer_with(g, out);
      generated += out.size();
      for (size_t idx : out) {
        if (auto refut = insert(idx)) return finish(SaturationResult::Outcome::kRefutation, *refut);
        if (out_of_budget()) return finish(SaturationResult::Outcome::kBudget, std::nullopt);
      }
    }
  }
};

}  // namespace

SaturationResult saturate(const std::vector<Step>& inputs, const Atom& goal_atom,
                          const Signature& sig, const Strategy& strategy,
                          const std::atomic<bool>* cancel) {
  (void)goal_atom;  // the goal clause is already among the inputs
  Saturator s(sig, strategy, cancel);
  return s.run(inputs);
}

SaturationResult run_portfolio(const std::vector<Step>& inputs, const Atom& goal_atom,
                               const Signature& sig, const std::vector<Strategy>& strategies,
                               double wall_budget_seconds, bool sequential) {
  if (strategies.empty()) throw std::runtime_error("portfolio needs at least one strategy");
  auto start = std::chrono::steady_clock::now();
  auto remaining = [&] {
    double used = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return wall_budget_seconds - used;
  };

  if (sequential || strategies.size() == 1) {
    SaturationResult last;
    last.strategy_index = 0;
    for (size_t i = 0; i < strategies.size(); ++i) {
      Strategy st = strategies[i];
      st.max_seconds = std::min(st.max_seconds, std::max(0.0, remaining()));
      SaturationResult r = saturate(inputs, goal_atom, sig, st, nullptr);
      r.strategy_index = static_cast<int>(i);
      if (r.outcome != SaturationResult::Outcome::kBudget) return r;
      last = std::move(r);
      if (remaining() <= 0) break;
    }
    return last;
  }

  // Parallel portfolio: a finished strategy cancels higher-index ones only;
  // the lowest-index non-budget result wins, independent of scheduling.
  std::vector<SaturationResult> results(strategies.size());
  std::deque<std::atomic<bool>> cancels(strategies.size());
  std::atomic<int> best{static_cast<int>(strategies.size())};
  std::vector<std::thread> workers;
  workers.reserve(strategies.size());
  for (size_t i = 0; i < strategies.size(); ++i) {
    workers.emplace_back([&, i] {
      Strategy st = strategies[i];
      st.max_seconds = std::min(st.max_seconds, wall_budget_seconds);
      SaturationResult r = saturate(inputs, goal_atom, sig, st, &cancels[i]);
      r.strategy_index = static_cast<int>(i);
      results[i] = std::move(r);
      if (results[i].outcome != SaturationResult::Outcome::kBudget) {
        int expected = best.load();
        while (static_cast<int>(i) < expected &&
               !best.compare_exchange_weak(expected, static_cast<int>(i))) {
        }
        int b = best.load();
        for (size_t j = static_cast<size_t>(b) + 1; j < cancels.size(); ++j)
          cancels[j].store(true);
      }
    });
  }
  for (auto& w : workers) w.join();
  for (size_t i = 0; i < results.size(); ++i)
    if (results[i].outcome != SaturationResult::Outcome::kBudget) return results[i];
  return results.back();
}

}  // namespace hornforge
