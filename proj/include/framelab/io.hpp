#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "framelab/construct.hpp"
#include "framelab/dimension.hpp"
#include "framelab/fourier.hpp"
#include "framelab/frames.hpp"
#include "framelab/measure.hpp"

namespace framelab {

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

// CSV readers skip blank lines and lines starting with '#'. Writers emit a
// "# config_hash=<hash>" line first when `config_hash` is nonempty.

void write_measure_csv(std::ostream& os, const QuadratureMeasure& m, const std::string& config_hash = {});
QuadratureMeasure read_measure_csv(std::istream& is);

void write_windowed_csv(std::ostream& os, const WindowedMeasure& m, const std::string& config_hash = {});
WindowedMeasure read_windowed_csv(std::istream& is);

/// Exact sets are written as p/q rationals, others as shortest doubles.
void write_frequency_csv(std::ostream& os, const FrequencySet& lam, const std::string& config_hash = {});
FrequencySet read_frequency_csv(std::istream& is);

/// Columns r, value, kind, seed, n_samples (n_dirs for envelopes).
void write_profile_csv(std::ostream& os, const RadialProfile& p, const std::string& config_hash = {});
RadialProfile read_profile_csv(std::istream& is);

nlohmann::ordered_json to_json(const FrameBounds& fb);
nlohmann::ordered_json to_json(const GapWitness& w);
nlohmann::ordered_json to_json(const CountingProfile& p);
nlohmann::ordered_json to_json(const LogLogFit& f);

}  // namespace framelab
