#include "rowcrop/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

namespace rowcrop {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ScenarioError(where + ": unknown field '" + item.key() + "'");
    }
  }
}

template <typename T>
void read_field(const json& obj, const std::string& where, const char* key,
                T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ScenarioError(where + "." + key + ": " + e.what());
  }
}

void parse_world(const json& j, WorldSpec& w) {
  check_keys(j, "world",
             {"row_length", "row_spacing", "plant_spacing",
              "plant_radius_mean", "plant_radius_jitter", "plant_height",
              "dropout_rate", "mask_noise_rate"});
  read_field(j, "world", "row_length", w.row_length);
  read_field(j, "world", "row_spacing", w.row_spacing);
  read_field(j, "world", "plant_spacing", w.plant_spacing);
  read_field(j, "world", "plant_radius_mean", w.plant_radius_mean);
  read_field(j, "world", "plant_radius_jitter", w.plant_radius_jitter);
  read_field(j, "world", "plant_height", w.plant_height);
  read_field(j, "world", "dropout_rate", w.dropout_rate);
  read_field(j, "world", "mask_noise_rate", w.mask_noise_rate);
}

void parse_camera(const json& j, CameraModel& c) {
  check_keys(j, "camera",
             {"horizontal_fov", "width", "height", "mount_height",
              "max_range"});
  read_field(j, "camera", "horizontal_fov", c.horizontal_fov);
  read_field(j, "camera", "width", c.width);
  read_field(j, "camera", "height", c.height);
  read_field(j, "camera", "mount_height", c.mount_height);
  read_field(j, "camera", "max_range", c.max_range);
}

void parse_pipeline(const json& j, PipelineConfig& p) {
  check_keys(j, "pipeline",
             {"noise_column_background_fraction", "history_len",
              "depth_threshold"});
  read_field(j, "pipeline", "noise_column_background_fraction",
             p.noise_column_background_fraction);
  read_field(j, "pipeline", "history_len", p.history_len);
  read_field(j, "pipeline", "depth_threshold", p.depth_threshold);
}

void parse_controller(const json& j, ControllerConfig& c) {
  check_keys(j, "controller",
             {"v_x_max", "omega_z_max", "min_cluster_width",
              "end_of_row_fraction"});
  read_field(j, "controller", "v_x_max", c.v_x_max);
  read_field(j, "controller", "omega_z_max", c.omega_z_max);
  read_field(j, "controller", "min_cluster_width", c.min_cluster_width);
  read_field(j, "controller", "end_of_row_fraction", c.end_of_row_fraction);
}

void parse_sim(const json& j, Scenario& s) {
  check_keys(j, "sim",
             {"dt", "max_steps", "collision_radius", "end_of_row_margin",
              "stall_limit", "start"});
  read_field(j, "sim", "dt", s.dt);
  read_field(j, "sim", "max_steps", s.max_steps);
  read_field(j, "sim", "collision_radius", s.collision_radius);
  read_field(j, "sim", "end_of_row_margin", s.end_of_row_margin);
  read_field(j, "sim", "stall_limit", s.stall_limit);
  if (j.contains("start")) {
    const json& start = j.at("start");
    check_keys(start, "sim.start", {"x", "y", "theta"});
    read_field(start, "sim.start", "x", s.start_pose.x);
    read_field(start, "sim.start", "y", s.start_pose.y);
    read_field(start, "sim.start", "theta", s.start_pose.theta);
  }
}

}  // namespace

SimRun Scenario::make_run(int episode_index) const {
  SimRun run;
  run.world = world;
  run.world.seed = base_seed + static_cast<std::uint64_t>(episode_index);
  run.camera = camera;
  run.pipeline = pipeline;
  run.pipeline.min_cluster_width = controller.min_cluster_width;
  run.pipeline.end_of_row_fraction = controller.end_of_row_fraction;
  run.controller = controller;
  run.start_pose = start_pose;
  run.dt = dt;
  run.max_steps = max_steps;
  run.collision_radius = collision_radius;
  run.end_of_row_margin = end_of_row_margin;
  run.stall_limit = stall_limit;
  return run;
}

Scenario nominal_scenario() {
  Scenario s;
  s.pipeline.depth_threshold = 2.5;
  // small lateral offset so the steering loop does real work
  s.start_pose.y = 0.05;
  return s;
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(origin + ": " + e.what());
  }
  if (!j.is_object()) {
    throw ScenarioError(origin + ": top level must be an object");
  }
  check_keys(j, origin,
             {"schema", "world", "camera", "pipeline", "controller", "sim",
              "episodes", "base_seed", "out_dir"});

  Scenario s = nominal_scenario();
  read_field(j, origin, "schema", s.schema);
  if (s.schema != 1) {
    throw ScenarioError(origin + ": unsupported schema version " +
                        std::to_string(s.schema));
  }
  if (j.contains("world")) parse_world(j.at("world"), s.world);
  if (j.contains("camera")) parse_camera(j.at("camera"), s.camera);
  if (j.contains("pipeline")) parse_pipeline(j.at("pipeline"), s.pipeline);
  if (j.contains("controller")) {
    parse_controller(j.at("controller"), s.controller);
  }
  if (j.contains("sim")) parse_sim(j.at("sim"), s);
  read_field(j, origin, "episodes", s.episodes);
  read_field(j, origin, "base_seed", s.base_seed);
  read_field(j, origin, "out_dir", s.out_dir);

  if (s.episodes < 1) {
    throw ScenarioError(origin + ": episodes must be >= 1");
  }
  try {
    validate(s.make_run(0));
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(origin + ": " + e.what());
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open scenario file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["schema"] = s.schema;
  j["world"] = {{"row_length", s.world.row_length},
                {"row_spacing", s.world.row_spacing},
                {"plant_spacing", s.world.plant_spacing},
                {"plant_radius_mean", s.world.plant_radius_mean},
                {"plant_radius_jitter", s.world.plant_radius_jitter},
                {"plant_height", s.world.plant_height},
                {"dropout_rate", s.world.dropout_rate},
                {"mask_noise_rate", s.world.mask_noise_rate}};
  j["camera"] = {{"horizontal_fov", s.camera.horizontal_fov},
                 {"width", s.camera.width},
                 {"height", s.camera.height},
                 {"mount_height", s.camera.mount_height},
                 {"max_range", s.camera.max_range}};
  j["pipeline"] = {{"noise_column_background_fraction",
                    s.pipeline.noise_column_background_fraction},
                   {"history_len", s.pipeline.history_len},
                   {"depth_threshold", s.pipeline.depth_threshold}};
  j["controller"] = {{"v_x_max", s.controller.v_x_max},
                     {"omega_z_max", s.controller.omega_z_max},
                     {"min_cluster_width", s.controller.min_cluster_width},
                     {"end_of_row_fraction", s.controller.end_of_row_fraction}};
  j["sim"] = {{"dt", s.dt},
              {"max_steps", s.max_steps},
              {"collision_radius", s.collision_radius},
              {"end_of_row_margin", s.end_of_row_margin},
              {"stall_limit", s.stall_limit},
              {"start",
               {{"x", s.start_pose.x},
                {"y", s.start_pose.y},
                {"theta", s.start_pose.theta}}}};
  j["episodes"] = s.episodes;
  j["base_seed"] = s.base_seed;
  j["out_dir"] = s.out_dir;
  return j.dump(2) + "\n";
}

}  // namespace rowcrop
