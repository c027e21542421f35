#include "cswseg/emma.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>

#include "cswseg/errors.hpp"

namespace cswseg
{

  PrfScore EmmaReport::language(Language language) const
  {
    const auto it = by_language.find(language);
    return it != by_language.end() ? it->second : PrfScore{};
  }

  namespace
  {
    using Cost = std::int64_t;
    constexpr Cost infinite = std::numeric_limits<Cost>::max() / 4;

    struct Edge
    {
      std::size_t to;
      int capacity;
      Cost cost;
    };

    // Min-cost flow by successive shortest paths with Johnson potentials.
    // Unit capacities; stops once the cheapest augmenting path is no longer
    // negative, which yields the maximum-weight (not maximum-cardinality)
    // matching.
    class AssignmentSolver
    {
    public:
      AssignmentSolver(std::size_t left, std::size_t right)
        : _left(left)
        , _right(right)
        , _graph(left + right + 2)
      {
        for (std::size_t i = 0; i < left; ++i)
          add_edge(source(), 1 + i, 0);
        for (std::size_t j = 0; j < right; ++j)
          add_edge(1 + left + j, sink(), 0);
      }

      void add_weight(std::size_t i, std::size_t j, std::uint64_t weight)
      {
        add_edge(1 + i, 1 + _left + j, -static_cast<Cost>(weight));
      }

      std::vector<std::pair<std::size_t, std::size_t>> solve()
      {
        const std::size_t n = _graph.size();
        std::vector<Cost> potential(n, 0);
        // Valid starting potentials: only pred->gold edges carry (negative) cost.
        for (std::size_t i = 0; i < _left; ++i)
          for (const auto& edge : _graph[1 + i])
            if (edge.to > _left && edge.to != sink() && edge.capacity > 0)
              potential[edge.to] = std::min(potential[edge.to], edge.cost);
        for (std::size_t j = 0; j < _right; ++j)
          potential[sink()] = std::min(potential[sink()], potential[1 + _left + j]);

        std::vector<Cost> dist(n);
        std::vector<std::size_t> prev_node(n), prev_edge(n);
        using Item = std::pair<Cost, std::size_t>;
        while (true)
        {
          std::fill(dist.begin(), dist.end(), infinite);
          dist[source()] = 0;
          std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
          queue.push({0, source()});
          while (!queue.empty())
          {
            const auto [d, u] = queue.top();
            queue.pop();
            if (d > dist[u])
              continue;
            for (std::size_t k = 0; k < _graph[u].size(); ++k)
            {
              const auto& edge = _graph[u][k];
              if (edge.capacity <= 0)
                continue;
              const Cost candidate = d + edge.cost + potential[u] - potential[edge.to];
              if (candidate < dist[edge.to])
              {
                dist[edge.to] = candidate;
                prev_node[edge.to] = u;
                prev_edge[edge.to] = k;
                queue.push({candidate, edge.to});
              }
            }
          }
          if (dist[sink()] >= infinite)
            break;
          const Cost path_cost = dist[sink()] + potential[sink()] - potential[source()];
          if (path_cost >= 0)
            break;
          for (std::size_t v = 0; v < n; ++v)
            if (dist[v] < infinite)
              potential[v] += dist[v];
          for (std::size_t v = sink(); v != source(); v = prev_node[v])
          {
            auto& edge = _graph[prev_node[v]][prev_edge[v]];
            edge.capacity -= 1;
            _graph[v][_reverse[prev_node[v]][prev_edge[v]]].capacity += 1;
          }
        }

        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t i = 0; i < _left; ++i)
          for (std::size_t k = 0; k < _graph[1 + i].size(); ++k)
          {
            const auto& edge = _graph[1 + i][k];
            if (edge.to > _left && edge.to != sink() && edge.cost < 0 && edge.capacity == 0)
              pairs.emplace_back(i, edge.to - 1 - _left);
          }
        return pairs;
      }

    private:
      std::size_t source() const { return 0; }
      std::size_t sink() const { return _left + _right + 1; }

      void add_edge(std::size_t from, std::size_t to, Cost cost)
      {
        if (_reverse.size() < _graph.size())
          _reverse.resize(_graph.size());
        _reverse[from].push_back(_graph[to].size());
        _reverse[to].push_back(_graph[from].size());
        _graph[from].push_back({to, 1, cost});
        _graph[to].push_back({from, 0, -cost});
      }

      std::size_t _left;
      std::size_t _right;
      std::vector<std::vector<Edge>> _graph;
      std::vector<std::vector<std::size_t>> _reverse;
    };

    struct DisjointSets
    {
      std::vector<std::size_t> parent;

      explicit DisjointSets(std::size_t n)
        : parent(n)
      {
        std::iota(parent.begin(), parent.end(), 0);
      }

      std::size_t find(std::size_t x)
      {
        while (parent[x] != x)
          x = parent[x] = parent[parent[x]];
        return x;
      }

      void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
    };

    std::map<std::string, std::uint64_t> multiplicities(const Analysis& analysis)
    {
      std::map<std::string, std::uint64_t> counts;
      for (const auto& morph : analysis.morphs)
        ++counts[morph];
      return counts;
    }

    PrfScore make_score(std::uint64_t matches, std::uint64_t predicted, std::uint64_t gold, std::size_t words)
    {
      PrfScore score;
      score.matches = matches;
      score.predicted = predicted;
      score.gold = gold;
      score.words = words;
      score.precision = predicted > 0 ? static_cast<double>(matches) / static_cast<double>(predicted) : 0.0;
      score.recall = gold > 0 ? static_cast<double>(matches) / static_cast<double>(gold) : 0.0;
      const double sum = score.precision + score.recall;
      score.f1 = sum > 0.0 ? 2.0 * score.precision * score.recall / sum : 0.0;
      return score;
    }
  }

  std::uint64_t emma_matching(const std::vector<Analysis>& pred, const std::vector<Analysis>& gold, MorphMatching* matching)
  {
    if (pred.size() != gold.size())
      throw AlignmentError("EMMA needs aligned word lists: " + std::to_string(pred.size()) + " predicted vs "
                           + std::to_string(gold.size()) + " gold");

    std::map<std::string, std::size_t> pred_ids, gold_ids;
    std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> weights;
    std::vector<std::string> pred_names, gold_names;
    const auto intern = [](std::map<std::string, std::size_t>& ids, std::vector<std::string>& names, const std::string& s) {
      const auto [it, fresh] = ids.emplace(s, names.size());
      if (fresh)
        names.push_back(s);
      return it->second;
    };

    for (std::size_t w = 0; w < pred.size(); ++w)
    {
      const auto p_counts = multiplicities(pred[w]);
      const auto g_counts = multiplicities(gold[w]);
      for (const auto& [p, pc] : p_counts)
      {
        const auto pi = intern(pred_ids, pred_names, p);
        for (const auto& [g, gc] : g_counts)
          weights[{pi, intern(gold_ids, gold_names, g)}] += std::min(pc, gc);
      }
      for (const auto& [g, gc] : g_counts)
        intern(gold_ids, gold_names, g);
    }

    const std::size_t P = pred_names.size();
    DisjointSets sets(P + gold_names.size());
    for (const auto& [edge, weight] : weights)
      sets.unite(edge.first, P + edge.second);

    // Group edges by connected component and solve each independently.
    std::map<std::size_t, std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::uint64_t>>> components;
    for (const auto& item : weights)
      components[sets.find(item.first.first)].push_back(item);

    std::uint64_t total = 0;
    for (const auto& [root, edges] : components)
    {
      std::map<std::size_t, std::size_t> left, right;
      for (const auto& [edge, weight] : edges)
      {
        left.emplace(edge.first, left.size());
        right.emplace(edge.second, right.size());
      }
      std::vector<std::size_t> left_ids(left.size()), right_ids(right.size());
      for (const auto& [global, local] : left)
        left_ids[local] = global;
      for (const auto& [global, local] : right)
        right_ids[local] = global;

      AssignmentSolver solver(left.size(), right.size());
      for (const auto& [edge, weight] : edges)
        solver.add_weight(left.at(edge.first), right.at(edge.second), weight);
      for (const auto& [i, j] : solver.solve())
      {
        const auto p = left_ids[i];
        const auto g = right_ids[j];
        total += weights.at({p, g});
        if (matching)
          matching->emplace_back(pred_names[p], gold_names[g]);
      }
    }
    if (matching)
      std::sort(matching->begin(), matching->end());
    return total;
  }

  PrfScore emma_score(const std::vector<Analysis>& pred, const std::vector<Analysis>& gold)
  {
    const auto matches = emma_matching(pred, gold);
    std::uint64_t predicted = 0, gold_total = 0;
    for (const auto& a : pred)
      predicted += a.size();
    for (const auto& a : gold)
      gold_total += a.size();
    return make_score(matches, predicted, gold_total, pred.size());
  }

  EmmaReport emma(const std::vector<Analysis>& pred, const std::vector<Analysis>& gold, const std::vector<Language>& languages)
  {
    if (pred.size() != gold.size() || pred.size() != languages.size())
      throw AlignmentError("EMMA needs aligned inputs: " + std::to_string(pred.size()) + " predicted, "
                           + std::to_string(gold.size()) + " gold, " + std::to_string(languages.size()) + " language tags");

    EmmaReport report;
    {
      const auto matches = emma_matching(pred, gold, &report.matching);
      std::uint64_t predicted = 0, gold_total = 0;
      for (const auto& a : pred)
        predicted += a.size();
      for (const auto& a : gold)
        gold_total += a.size();
      report.all = make_score(matches, predicted, gold_total, pred.size());
    }

    std::map<Language, std::pair<std::vector<Analysis>, std::vector<Analysis>>> split;
    for (std::size_t i = 0; i < pred.size(); ++i)
    {
      auto& [p, g] = split[languages[i]];
      p.push_back(pred[i]);
      g.push_back(gold[i]);
    }
    for (const auto& [language, lists] : split)
      report.by_language[language] = emma_score(lists.first, lists.second);
    return report;
  }

}
