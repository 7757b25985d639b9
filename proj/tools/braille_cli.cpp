// braille: convert scanned Braille pages to text, render synthetic pages,
// run the enhancement-order ablation, and serve the keypad.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "braille/pipeline.hpp"
#include "braille/scoring.hpp"
#include "braille/service.hpp"
#include "braille/synth.hpp"

namespace fs = std::filesystem;
using namespace braille;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

// The template's "{}" is replaced by the path of a file holding the text;
// without a placeholder the text goes to the command's stdin.
void speak(const std::string& command, const std::string& text) {
  const auto pos = command.find("{}");
  if (pos != std::string::npos) {
    const fs::path tmp = fs::temp_directory_path() / "braille_speak.txt";
    write_file(tmp, text);
    std::string cmd = command;
    cmd.replace(pos, 2, "'" + tmp.string() + "'");
    if (std::system(cmd.c_str()) != 0) std::cerr << "speak command failed\n";
    return;
  }
  FILE* pipe = ::popen(command.c_str(), "w");
  if (!pipe) throw Error("cannot run speak command");
  std::fwrite(text.data(), 1, text.size(), pipe);
  if (::pclose(pipe) != 0) std::cerr << "speak command failed\n";
}

struct PipelineArgs {
  std::string config;
  std::string lang;
  int grade = 0;
  std::string order;
};

void add_pipeline_options(CLI::App* cmd, PipelineArgs& a) {
  cmd->add_option("--config", a.config, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--lang", a.lang, "en, hi or ta")->check(CLI::IsMember({"en", "hi", "ta"}));
  cmd->add_option("--grade", a.grade, "1 or 2 (English)")->check(CLI::IsMember({1, 2}));
  cmd->add_option("--order", a.order, "enhancement order, e.g. CS,IS,MO");
}

PipelineConfig resolve_config(const PipelineArgs& a) {
  PipelineConfig config = a.config.empty() ? PipelineConfig{} : load_config_file(a.config);
  if (!a.lang.empty()) config.language = parse_language(a.lang);
  if (a.grade) config.grade = a.grade;
  if (!a.order.empty()) config.order = parse_order(a.order);
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Braille page recognition and keypad entry"};
  app.require_subcommand(1);

  // convert
  PipelineArgs conv_args;
  std::string conv_image, conv_out, dump_layout_path, dump_bits_path, speak_cmd;
  bool dump_layout_flag = false, dump_bits_flag = false, report_flag = false;
  auto* convert = app.add_subcommand("convert", "Decode a scanned Braille page (binary PGM)");
  convert->add_option("image", conv_image, "input page")->required();
  add_pipeline_options(convert, conv_args);
  convert->add_option("-o,--output", conv_out, "UTF-8 text output (default stdout)");
  convert->add_flag("--dump-layout", dump_layout_flag, "write the band/cell layout");
  convert->add_option("--layout-file", dump_layout_path, "layout destination (default <output>.layout.txt or stderr)");
  convert->add_flag("--dump-bits", dump_bits_flag, "write the extracted bit strings");
  convert->add_option("--bits-file", dump_bits_path, "bit-string destination (default <output>.bits or stderr)");
  convert->add_flag("--report", report_flag, "print cell counts and timing to stderr");
  convert->add_option("--speak-cmd", speak_cmd, "pipe the text to this command ({} = text file path)");

  // synth
  std::string synth_text_path, synth_out, synth_lang = "en";
  int synth_grade = 2, synth_cells = 40;
  double noise_sigma = 0, speck_density = 0, salt_density = 0, speck_radius = 3, border_mm = 0;
  std::uint64_t seed = 1;
  auto* synth = app.add_subcommand("synth", "Render text as a synthetic Braille page");
  synth->add_option("text", synth_text_path, "UTF-8 text file")->required()->check(CLI::ExistingFile);
  synth->add_option("-o,--output", synth_out, "output PGM; .txt and .bits sidecars are written next to it")
      ->required();
  synth->add_option("--lang", synth_lang)->check(CLI::IsMember({"en", "hi", "ta"}));
  synth->add_option("--grade", synth_grade)->check(CLI::IsMember({1, 2}));
  synth->add_option("--cells-per-line", synth_cells);
  synth->add_option("--noise-sigma", noise_sigma, "gaussian noise sigma");
  synth->add_option("--speck-density", speck_density, "dark specks per pixel");
  synth->add_option("--speck-radius", speck_radius);
  synth->add_option("--salt-density", salt_density, "salt-and-pepper density");
  synth->add_option("--border-mm", border_mm, "scanner shadow width on the left and top edges");
  synth->add_option("--seed", seed);

  // ablate
  PipelineArgs abl_args;
  std::vector<std::string> abl_pages, abl_orders;
  bool abl_csv = false;
  auto* ablate = app.add_subcommand("ablate", "Score enhancement orders over pages with .txt references");
  ablate->add_option("pages", abl_pages, "PGM pages; reference text is <page>.txt")->required();
  ablate->add_option("--orders", abl_orders, "orders such as CS,IS,MO (repeatable)");
  add_pipeline_options(ablate, abl_args);
  ablate->add_flag("--csv", abl_csv, "machine-readable rows instead of the aligned table");

  // keypad-serve
  ServiceOptions serve_opts;
  std::string serve_lang = "en", static_dir;
  auto* serve = app.add_subcommand("keypad-serve", "Serve keypad sessions over HTTP on localhost");
  serve->add_option("--port", serve_opts.port, "0 picks a free port")->default_val(8080);
  serve->add_option("--host", serve_opts.host)->default_val("127.0.0.1");
  serve->add_option("--lang", serve_lang, "default session language")->check(CLI::IsMember({"en", "hi", "ta"}));
  serve->add_option("--grade", serve_opts.grade)->check(CLI::IsMember({1, 2}));
  serve->add_option("--static", static_dir, "directory served at /")->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*convert) {
      const PipelineConfig config = resolve_config(conv_args);
      const Decoder decoder(load_shipped_table(config.language, config.grade));
      const ConversionReport r = run_pipeline_file(conv_image, config, decoder);
      const std::string text = r.text + "\n";
      if (conv_out.empty()) {
        std::cout << text;
      } else {
        write_file(conv_out, text);
      }
      const auto emit = [&](bool on, std::string path, const char* suffix, const std::string& body) {
        if (!on && path.empty()) return;
        if (path.empty() && !conv_out.empty()) path = conv_out + suffix;
        if (path.empty()) {
          std::cerr << body;
        } else {
          write_file(path, body);
        }
      };
      emit(dump_layout_flag, dump_layout_path, ".layout.txt", dump_layout(r.layout));
      emit(dump_bits_flag, dump_bits_path, ".bits", format_bit_rows(r.patterns));
      if (report_flag) {
        std::cerr << "lines " << r.layout.line_bands.size() << ", cells " << r.total_cells << ", unmapped "
                  << r.unmapped_cells << ", words " << r.words << ", " << r.seconds << " s\n";
      }
      if (!speak_cmd.empty()) speak(speak_cmd, r.text);
    } else if (*synth) {
      const MappingTable table = load_shipped_table(parse_language(synth_lang), synth_grade);
      RenderStyle style;
      style.cells_per_line = synth_cells;
      style.scan_border_mm = border_mm;
      style.seed = seed;
      const RenderedPage page = render_page(read_file(synth_text_path), table, BrailleGeometry{}, style);
      GrayImage img = page.image;
      if (noise_sigma > 0) img = add_noise(img, NoiseSpec{NoiseKind::gaussian, noise_sigma, 0, 0, seed});
      if (speck_density > 0) {
        img = add_noise(img, NoiseSpec{NoiseKind::speck, speck_density, speck_radius, NoiseSpec{}.speck_level, seed + 1});
      }
      if (salt_density > 0) img = add_noise(img, NoiseSpec{NoiseKind::salt, salt_density, 0, 0, seed + 2});
      save_pgm_file(img, synth_out);
      const fs::path stem = fs::path(synth_out);
      write_file(fs::path(stem).replace_extension(".txt"), page.text + "\n");
      write_file(fs::path(stem).replace_extension(".bits"), format_bit_rows(page.patterns));
    } else if (*ablate) {
      PipelineConfig base = resolve_config(abl_args);
      const Decoder decoder(load_shipped_table(base.language, base.grade));
      std::vector<AblationPage> pages;
      for (const auto& p : abl_pages) {
        pages.push_back(AblationPage{fs::path(p).stem().string(), load_pgm_file(p),
                                     read_file(fs::path(p).replace_extension(".txt"))});
      }
      std::vector<std::vector<EnhanceStep>> orders;
      for (const auto& o : abl_orders) orders.push_back(parse_order(o));
      if (orders.empty()) orders = {parse_order("CS"), parse_order("CS,IS"), parse_order("CS,IS,MO"), parse_order("MO,CS,IS")};
      const AblationTable table = run_ablation(pages, orders, base, decoder);
      std::cout << (abl_csv ? table.format_csv() : table.format_text());
    } else if (*serve) {
      serve_opts.language = parse_language(serve_lang);
      if (!static_dir.empty()) serve_opts.static_dir = static_dir;
      KeypadService service(serve_opts);
      service.run([&](int port) { std::cerr << "keypad service on http://" << serve_opts.host << ":" << port << std::endl; });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
