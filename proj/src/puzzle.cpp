#include "memrc/puzzle.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace memrc {

Grid make_empty_grid(int n) {
  Grid g;
  g.n = n;
  g.cells.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  return g;
}

namespace {

struct Token {
  std::string text;
  int line = 0;  // 1-based
  int col = 0;   // 1-based
};

std::vector<std::vector<Token>> tokenize_rows(const std::string& text) {
  std::vector<std::vector<Token>> rows;
  int line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<Token> row;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
      }
      row.push_back({line.substr(start, i - start), line_no, static_cast<int>(start) + 1});
    }
    if (!row.empty()) {
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

[[noreturn]] void fail_at(const Token& tok, const std::string& what) {
  throw PuzzleError("line " + std::to_string(tok.line) + ", column " + std::to_string(tok.col) +
                    ": " + what);
}

}  // namespace

ParsedPuzzle parse_grid(const std::string& text) {
  const auto rows = tokenize_rows(text);
  const int n = static_cast<int>(rows.size());
  if (n < 2) {
    throw PuzzleError("puzzle needs at least 2 rows, got " + std::to_string(n));
  }

  ParsedPuzzle out;
  out.spec.n = n;
  out.grid = make_empty_grid(n);

  for (int r = 0; r < n; ++r) {
    int c = 0;
    for (const Token& tok : rows[static_cast<std::size_t>(r)]) {
      const bool all_dots =
          std::all_of(tok.text.begin(), tok.text.end(), [](char ch) { return ch == '.'; });
      if (all_dots) {
        c += static_cast<int>(tok.text.size());  // a run of dots is that many blanks
        if (c > n) fail_at(tok, "row has more than " + std::to_string(n) + " cells");
        continue;
      }
      if (c >= n) fail_at(tok, "row has more than " + std::to_string(n) + " cells");
      int value = 0;
      const auto [ptr, ec] =
          std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
      if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
        fail_at(tok, "invalid cell token '" + tok.text + "'");
      }
      if (value != 0 && (value < 1 || value > n)) {
        fail_at(tok, "digit " + std::to_string(value) + " out of range 1.." + std::to_string(n));
      }
      if (value != 0) {
        out.grid.at(r, c) = value;
        out.spec.clues.push_back({r + 1, c + 1, value});
      }
      ++c;
    }
    if (c != n) {
      throw PuzzleError("line " + std::to_string(rows[static_cast<std::size_t>(r)][0].line) +
                        ": expected " + std::to_string(n) + " cells, got " + std::to_string(c));
    }
  }
  return out;
}

int box_side(int n) {
  const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  return s * s == n ? s : 0;
}

bool boxes_enabled(const PuzzleSpec& spec) {
  switch (spec.boxes) {
    case BoxesMode::Off:
      return false;
    case BoxesMode::On:
      if (box_side(spec.n) == 0) {
        throw PuzzleError("boxes require a perfect-square side, got n=" + std::to_string(spec.n));
      }
      return true;
    case BoxesMode::Auto:
    default:
      return spec.n >= 4 && box_side(spec.n) != 0;
  }
}

ConstraintGraph constraint_graph(const PuzzleSpec& spec) {
  const int n = spec.n;
  const bool use_boxes = boxes_enabled(spec);
  const int bs = use_boxes ? box_side(n) : 0;
  const int n_cells = n * n;

  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < n_cells; ++a) {
    const int ra = a / n, ca = a % n;
    for (int b = a + 1; b < n_cells; ++b) {
      const int rb = b / n, cb = b % n;
      bool conflict = ra == rb || ca == cb;
      if (!conflict && use_boxes) {
        conflict = (ra / bs == rb / bs) && (ca / bs == cb / bs);
      }
      if (conflict) {
        edges.emplace_back(a, b);
      }
    }
  }
  return make_graph(n_cells, std::move(edges));
}

Eigen::VectorXd initial_voltages(const PuzzleSpec& spec, const CircuitParams& p, double clue_base,
                                 double clue_step) {
  if (clue_base < 0.0 || clue_step < 0.0) {
    throw PuzzleError("clue encoding must be nonnegative");
  }
  const double top = clue_base + (spec.n - 1) * clue_step;
  if (top > p.v_dd) {
    std::ostringstream msg;
    msg << "clue encoding exceeds v_dd: " << clue_base << " + " << (spec.n - 1) << "*" << clue_step
        << " = " << top << " > " << p.v_dd;
    throw PuzzleError(msg.str());
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(spec.n * spec.n);
  for (const Clue& clue : spec.clues) {
    v[(clue.row - 1) * spec.n + (clue.col - 1)] = clue_base + (clue.digit - 1) * clue_step;
  }
  return v;
}

namespace {

struct Masks {
  std::vector<std::uint64_t> rows, cols, boxes;
  int box_stride = 0;  // 0 when boxes are off

  int box_of(int r, int c) const {
    return (r / box_stride) * box_stride + c / box_stride;
  }
};

// Seeds constraint masks from the filled cells; false on a direct conflict.
bool seed_masks(const Grid& g, bool use_boxes, int bs, Masks& m) {
  const int n = g.n;
  m.rows.assign(static_cast<std::size_t>(n), 0);
  m.cols.assign(static_cast<std::size_t>(n), 0);
  m.boxes.assign(static_cast<std::size_t>(n), 0);
  m.box_stride = bs;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int d = g.at(r, c);
      if (d == 0) continue;
      const std::uint64_t bit = std::uint64_t{1} << d;
      const int b = use_boxes ? m.box_of(r, c) : 0;
      if ((m.rows[static_cast<std::size_t>(r)] & bit) ||
          (m.cols[static_cast<std::size_t>(c)] & bit) ||
          (use_boxes && (m.boxes[static_cast<std::size_t>(b)] & bit))) {
        return false;
      }
      m.rows[static_cast<std::size_t>(r)] |= bit;
      m.cols[static_cast<std::size_t>(c)] |= bit;
      if (use_boxes) m.boxes[static_cast<std::size_t>(b)] |= bit;
    }
  }
  return true;
}

struct Backtracker {
  Grid* work;
  const std::vector<int>* blanks;
  Masks* m;
  bool use_boxes;
  int n, limit, found = 0;
  Grid* first;

  void search(std::size_t pos) {
    if (found >= limit) return;
    if (pos == blanks->size()) {
      if (found == 0 && first) *first = *work;
      ++found;
      return;
    }
    const int cell = (*blanks)[pos];
    const int r = cell / n, c = cell % n;
    const int b = use_boxes ? m->box_of(r, c) : 0;
    for (int d = 1; d <= n; ++d) {
      const std::uint64_t bit = std::uint64_t{1} << d;
      if ((m->rows[static_cast<std::size_t>(r)] & bit) ||
          (m->cols[static_cast<std::size_t>(c)] & bit) ||
          (use_boxes && (m->boxes[static_cast<std::size_t>(b)] & bit))) {
        continue;
      }
      m->rows[static_cast<std::size_t>(r)] |= bit;
      m->cols[static_cast<std::size_t>(c)] |= bit;
      if (use_boxes) m->boxes[static_cast<std::size_t>(b)] |= bit;
      work->at(r, c) = d;
      search(pos + 1);
      work->at(r, c) = 0;
      m->rows[static_cast<std::size_t>(r)] &= ~bit;
      m->cols[static_cast<std::size_t>(c)] &= ~bit;
      if (use_boxes) m->boxes[static_cast<std::size_t>(b)] &= ~bit;
      if (found >= limit) return;
    }
  }
};

}  // namespace

int count_solutions(const Grid& g, const PuzzleSpec& spec, int limit, Grid* first_solution) {
  if (limit < 1) {
    throw std::invalid_argument("count_solutions: limit must be >= 1");
  }
  if (g.n != spec.n) {
    throw std::invalid_argument("count_solutions: grid and spec disagree on n");
  }
  const bool use_boxes = boxes_enabled(spec);
  const int bs = use_boxes ? box_side(g.n) : 1;

  Masks masks;
  if (!seed_masks(g, use_boxes, bs, masks)) {
    return 0;
  }
  std::vector<int> blanks;
  for (int i = 0; i < g.n * g.n; ++i) {
    if (g.cells[static_cast<std::size_t>(i)] == 0) blanks.push_back(i);
  }
  Grid work = g;
  Backtracker bt{&work, &blanks, &masks, use_boxes, g.n, limit, 0, first_solution};
  bt.search(0);
  return bt.found;
}

bool is_valid_solution(const Grid& g, const PuzzleSpec& spec) {
  const int n = spec.n;
  if (g.n != n || static_cast<int>(g.cells.size()) != n * n) return false;
  const bool use_boxes = boxes_enabled(spec);
  const int bs = use_boxes ? box_side(n) : 1;
  const std::uint64_t full = ((std::uint64_t{1} << n) - 1) << 1;

  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n), 0);
  std::vector<std::uint64_t> cols(static_cast<std::size_t>(n), 0);
  std::vector<std::uint64_t> boxes(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int d = g.at(r, c);
      if (d < 1 || d > n) return false;
      const std::uint64_t bit = std::uint64_t{1} << d;
      rows[static_cast<std::size_t>(r)] |= bit;
      cols[static_cast<std::size_t>(c)] |= bit;
      if (use_boxes) {
        boxes[static_cast<std::size_t>((r / bs) * bs + c / bs)] |= bit;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (rows[static_cast<std::size_t>(i)] != full) return false;
    if (cols[static_cast<std::size_t>(i)] != full) return false;
    if (use_boxes && boxes[static_cast<std::size_t>(i)] != full) return false;
  }
  for (const Clue& clue : spec.clues) {
    if (g.at(clue.row - 1, clue.col - 1) != clue.digit) return false;
  }
  return true;
}

std::string format_grid(const Grid& g) {
  std::ostringstream out;
  for (int r = 0; r < g.n; ++r) {
    for (int c = 0; c < g.n; ++c) {
      if (c > 0) out << ' ';
      const int d = g.at(r, c);
      if (d == 0) {
        out << '.';
      } else {
        out << d;
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace memrc
