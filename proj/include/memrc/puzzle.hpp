#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "memrc/network.hpp"

namespace memrc {

enum class BoxesMode { Auto, On, Off };

struct Clue {
  int row = 0;  // 1-based
  int col = 0;  // 1-based
  int digit = 0;
};

struct PuzzleSpec {
  int n = 0;
  BoxesMode boxes = BoxesMode::Auto;
  std::vector<Clue> clues;
};

struct Grid {
  int n = 0;
  std::vector<int> cells;  // row-major, 0 = blank

  int at(int row, int col) const { return cells[static_cast<std::size_t>(row * n + col)]; }
  int& at(int row, int col) { return cells[static_cast<std::size_t>(row * n + col)]; }
};

Grid make_empty_grid(int n);

class PuzzleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedPuzzle {
  PuzzleSpec spec;
  Grid grid;
};

// Text grid: one nonempty line per row, whitespace-separated cells. `.` or
// `0` is a blank, a run of dots is that many blanks, anything else must be a
// decimal digit in 1..n. n is the row count and every row must yield n
// cells. Throws PuzzleError with line/column on malformed input.
ParsedPuzzle parse_grid(const std::string& text);

// Side length of a sub-grid box, or 0 when n is not a perfect square.
int box_side(int n);

// Resolves BoxesMode::Auto (on iff n is a square and n >= 4). Throws
// PuzzleError for BoxesMode::On with non-square n.
bool boxes_enabled(const PuzzleSpec& spec);

// Conflict edges: cells sharing a row, a column, or (when boxes are on) a
// sub-grid box.
ConstraintGraph constraint_graph(const PuzzleSpec& spec);

// Clue cell with digit k starts at clue_base + (k-1)*clue_step, blanks at 0.
// Requires clue_base >= 0 and clue_base + (n-1)*clue_step <= p.v_dd.
Eigen::VectorXd initial_voltages(const PuzzleSpec& spec, const CircuitParams& p, double clue_base,
                                 double clue_step);

// Number of completions of g under the row/column/box rules, capped at
// limit. Plain backtracking, independent of the simulation path. When
// first_solution is given it receives the first completion found.
int count_solutions(const Grid& g, const PuzzleSpec& spec, int limit,
                    Grid* first_solution = nullptr);

// True iff g has no blanks, every row/column/(box) is a permutation of
// 1..n, and g agrees with every clue of spec.
bool is_valid_solution(const Grid& g, const PuzzleSpec& spec);

// Echo a grid in the parse_grid text format.
std::string format_grid(const Grid& g);

}  // namespace memrc
