#include "braille/service.hpp"

#include <httplib.h>
#include <json.hpp>

namespace braille {
namespace {

using nlohmann::json;

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

char key_from_json(const json& value) {
  if (value.is_number_integer()) {
    const auto k = value.get<long long>();
    return k >= 0 && k <= 9 ? static_cast<char>('0' + k) : '?';
  }
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    return s.size() == 1 ? s[0] : '?';
  }
  throw Error("\"key\" must be a number or a one-character string");
}

}  // namespace

KeypadService::KeypadService(ServiceOptions options)
    : options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

KeypadService::~KeypadService() { stop(); }

std::shared_ptr<const Decoder> KeypadService::decoder_for(Language language, int grade) {
  std::lock_guard lock(mutex_);
  auto& slot = decoders_[{language, grade}];
  if (!slot) slot = std::make_shared<const Decoder>(load_shipped_table(language, grade, options_.table_dir));
  return slot;
}

std::shared_ptr<KeypadService::Slot> KeypadService::find(const std::string& id) {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void KeypadService::install_routes() {
  server_->Post("/session", [this](const httplib::Request& req, httplib::Response& res) {
    try {
      Language language = options_.language;
      int grade = options_.grade;
      if (!req.body.empty()) {
        const json body = json::parse(req.body);
        if (body.contains("lang")) language = parse_language(body.at("lang").get<std::string>());
        if (body.contains("grade")) grade = body.at("grade").get<int>();
      }
      auto slot = std::make_shared<Slot>(decoder_for(language, grade));
      std::string id;
      {
        std::lock_guard lock(mutex_);
        id = std::to_string(next_id_++);
        sessions_.emplace(id, std::move(slot));
      }
      reply(res, 200, {{"session_id", id}});
    } catch (const std::exception& e) {
      reply(res, 400, {{"error", e.what()}});
    }
  });

  server_->Post(R"(/session/([^/]+)/key)", [this](const httplib::Request& req, httplib::Response& res) {
    const auto slot = find(req.matches[1]);
    if (!slot) return reply(res, 404, {{"error", "no such session"}});
    char key = '?';
    try {
      const json body = json::parse(req.body);
      if (!body.contains("key")) throw Error("missing \"key\"");
      key = key_from_json(body.at("key"));
    } catch (const std::exception& e) {
      return reply(res, 400, {{"error", e.what()}});
    }
    std::lock_guard lock(slot->mutex);
    const DecodeEvent ev = slot->session.feed(key);
    json body = {{"event", std::string(to_string(ev.kind))}, {"emitted", ev.emitted}, {"text", slot->session.text()}};
    if (!ev.message.empty()) body["message"] = ev.message;
    reply(res, 200, body);
  });

  server_->Get(R"(/session/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    const auto slot = find(req.matches[1]);
    if (!slot) return reply(res, 404, {{"error", "no such session"}});
    std::lock_guard lock(slot->mutex);
    reply(res, 200,
          {{"session_id", std::string(req.matches[1])},
           {"text", slot->session.text()},
           {"pending", slot->session.pending()}});
  });

  if (options_.static_dir) server_->set_mount_point("/", options_.static_dir->string());
}

int KeypadService::bind() {
  if (options_.port == 0) {
    port_ = server_->bind_to_any_port(options_.host);
  } else if (server_->bind_to_port(options_.host, options_.port)) {
    port_ = options_.port;
  } else {
    port_ = -1;
  }
  if (port_ <= 0) throw Error("cannot bind keypad service on " + options_.host + ":" + std::to_string(options_.port));
  return port_;
}

int KeypadService::start() {
  bind();
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return port_;
}

void KeypadService::run(const std::function<void(int)>& on_bound) {
  bind();
  if (on_bound) on_bound(port_);
  server_->listen_after_bind();
}

void KeypadService::stop() {
  if (server_) server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace braille
