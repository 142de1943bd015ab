#pragma once

namespace fgllab {

// Batch front end. Exit codes:
//   0   success; for ando-check, the criterion is Satisfied
//   1   ando-check found a Violated verdict (witness in the report)
//   2   ando-check was Inconclusive at the requested precision
//   10  usage error: unknown flag or subcommand, malformed flag value
//   11  unreadable or malformed input file (series, law, psi, config)
//   12  p is not prime
//   13  order, precision, or max outside the documented bounds
//   14  the computation rejected the inputs (height, precision, integrality)
int cli_main(int argc, char** argv);

} // namespace fgllab
