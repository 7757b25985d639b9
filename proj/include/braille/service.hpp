#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "braille/keypad.hpp"
#include "braille/mapping.hpp"

namespace httplib {
class Server;
}

namespace braille {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  Language language = Language::english;
  int grade = 2;
  std::filesystem::path table_dir = default_table_dir();
  std::optional<std::filesystem::path> static_dir;  // browser keypad bundle
};

/// Keypad sessions over HTTP/JSON on localhost:
///   POST /session                 {"lang":"en","grade":2}? -> {"session_id"}
///   POST /session/{id}/key        {"key":7} -> {"event","emitted","text"}
///   GET  /session/{id}            -> {"session_id","text","pending"}
class KeypadService {
 public:
  explicit KeypadService(ServiceOptions options);
  ~KeypadService();
  KeypadService(const KeypadService&) = delete;
  KeypadService& operator=(const KeypadService&) = delete;

  /// Binds and serves on a background thread; returns the bound port.
  int start();
  /// Binds and serves on the calling thread until stop(); on_bound sees the
  /// bound port before the first request is accepted.
  void run(const std::function<void(int)>& on_bound = {});
  void stop();
  int port() const { return port_; }

 private:
  struct Slot {
    std::mutex mutex;
    KeypadSession session;
    explicit Slot(std::shared_ptr<const Decoder> d) : session(std::move(d)) {}
  };

  void install_routes();
  int bind();
  std::shared_ptr<const Decoder> decoder_for(Language language, int grade);
  std::shared_ptr<Slot> find(const std::string& id);

  ServiceOptions options_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;

  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::map<std::pair<Language, int>, std::shared_ptr<const Decoder>> decoders_;
  unsigned long next_id_ = 1;
};

}  // namespace braille
