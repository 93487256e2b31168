#include "rowcrop/trajectory_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rowcrop/errors.hpp"

namespace rowcrop {

const char* to_string(Steering s) {
  switch (s) {
    case Steering::Follow:
      return "follow";
    case Steering::EndOfRow:
      return "end_of_row";
    case Steering::NoGap:
      return "no_gap";
  }
  return "unknown";
}

Steering steering_from_string(const std::string& s) {
  if (s == "follow") return Steering::Follow;
  if (s == "end_of_row") return Steering::EndOfRow;
  if (s == "no_gap") return Steering::NoGap;
  throw std::runtime_error("unknown steering decision: " + s);
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string trajectory_to_csv(
    const std::vector<TrajectorySample>& trajectory) {
  std::ostringstream out;
  out << "t,x,y,theta,v_x,omega_z,decision\n";
  for (const TrajectorySample& s : trajectory) {
    out << num(s.t) << ',' << num(s.pose.x) << ',' << num(s.pose.y) << ','
        << num(s.pose.theta) << ',' << num(s.cmd.linear) << ','
        << num(s.cmd.angular) << ',' << to_string(s.decision.variant) << '\n';
  }
  return out.str();
}

void write_trajectory_csv(const std::vector<TrajectorySample>& trajectory,
                          const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out << trajectory_to_csv(trajectory);
}

std::vector<TrajectorySample> read_trajectory_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open for reading: " + path);
  }
  std::vector<TrajectorySample> trajectory;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1) {
      if (line != "t,x,y,theta,v_x,omega_z,decision") {
        throw IoError(path + ":1: unexpected CSV header");
      }
      continue;
    }
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) {
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": expected 7 fields, got " +
                    std::to_string(fields.size()));
    }
    try {
      TrajectorySample s;
      s.t = std::stod(fields[0]);
      s.pose.x = std::stod(fields[1]);
      s.pose.y = std::stod(fields[2]);
      s.pose.theta = std::stod(fields[3]);
      s.cmd.linear = std::stod(fields[4]);
      s.cmd.angular = std::stod(fields[5]);
      s.decision.variant = steering_from_string(fields[6]);
      trajectory.push_back(s);
    } catch (const std::exception& e) {
      throw IoError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return trajectory;
}

std::string telemetry_line(const StepTelemetry& t) {
  nlohmann::json j;
  j["step"] = t.step;
  j["decision"] = to_string(t.decision.variant);
  j["d"] = t.decision.offset;
  j["v_x"] = t.cmd.linear;
  j["omega_z"] = t.cmd.angular;
  auto clusters = nlohmann::json::array();
  for (const GapCluster& c : t.clusters) {
    clusters.push_back({{"start", c.start}, {"end", c.end}});
  }
  j["clusters"] = std::move(clusters);
  return j.dump();
}

}  // namespace rowcrop
