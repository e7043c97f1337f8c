#include "contain/service.hpp"

#include <random>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

#include <httplib.h>

namespace contain {

namespace {

int http_status(const std::string& code) {
    if (code == "NotFound") return 404;
    if (code == "Conflict" || code == "GameOver") return 409;
    if (code == "IllegalMove" || code == "BudgetExceeded" || code == "ContainerIllegalMove" ||
        code == "SpreaderIllegalMove")
        return 422;
    if (code == "Internal") return 500;
    return 400;
}

json error_body(const std::string& code, const std::string& msg) { return {{"error", code}, {"message", msg}}; }

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

}  // namespace

Box parse_viewport(const std::string& s) {
    std::istringstream in(s);
    std::vector<int64_t> v;
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stoll(part, &used));
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw GameError("InvalidConfig", "viewport must be x0,y0,x1,y1");
        }
    }
    if (v.size() != 4 || v[0] > v[2] || v[1] > v[3]) throw GameError("InvalidConfig", "viewport must be x0,y0,x1,y1");
    return {v[0], v[1], v[2], v[3]};
}

struct Service::Impl {
    httplib::Server server;
    mutable std::shared_mutex mu;
    std::unordered_map<std::string, std::shared_ptr<Session>> games;
    std::mt19937_64 rng{std::random_device{}()};

    std::string new_id() {
        static const char* hex = "0123456789abcdef";
        std::string id;
        uint64_t r = rng();
        for (int i = 0; i < 16; ++i, r >>= 4) id.push_back(hex[r & 15]);
        return id;
    }
};

Service::Service() : impl_(std::make_unique<Impl>()) {
    auto& srv = impl_->server;
    srv.set_payload_max_length(16 << 20);

    // wraps a handler so GameErrors map to status codes
    auto guarded = [](auto fn) {
        return [fn](const httplib::Request& req, httplib::Response& res) {
            try {
                fn(req, res);
            } catch (const MoveRejected& e) {
                json cells = json::array();
                for (const auto& c : e.cells()) cells.push_back(c.to_json());
                json body = error_body(e.code(), e.what());
                body["rejected"] = cells;
                reply(res, 422, body);
            } catch (const GameError& e) {
                reply(res, http_status(e.code()), error_body(e.code(), e.what()));
            } catch (const json::exception& e) {
                reply(res, 400, error_body("BadRequest", e.what()));
            } catch (const std::exception& e) {
                reply(res, 500, error_body("Internal", e.what()));
            }
        };
    };
    auto session = [this](const httplib::Request& req) {
        auto s = find(req.path_params.at("id"));
        if (!s) throw GameError("NotFound", "no game " + req.path_params.at("id"));
        return s;
    };

    srv.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, {{"ok", true}}); });
    srv.Post("/games", guarded([this](const httplib::Request& req, httplib::Response& res) {
                 json body = req.body.empty() ? json::object() : json::parse(req.body);
                 auto [status, out] = create(body);
                 reply(res, status, out);
             }));
    srv.Get("/games/:id/state", guarded([session](const httplib::Request& req, httplib::Response& res) {
                auto s = session(req);
                std::optional<Box> v;
                if (req.has_param("viewport")) v = parse_viewport(req.get_param_value("viewport"));
                reply(res, 200, s->state(v));
            }));
    srv.Post("/games/:id/move", guarded([session](const httplib::Request& req, httplib::Response& res) {
                 auto s = session(req);
                 json body = json::parse(req.body);
                 if (!body.contains("cells")) throw GameError("BadRequest", "body needs cells");
                 if (body.contains("t") && body["t"].get<int64_t>() != s->turn() + 1)
                     throw GameError("Conflict", "move is for turn " + std::to_string(body["t"].get<int64_t>()) +
                                                     ", the game is at turn " + std::to_string(s->turn() + 1));
                 reply(res, 200, s->move(cells_from_json(body["cells"])));
             }));
    srv.Post("/games/:id/engine-step", guarded([session](const httplib::Request& req, httplib::Response& res) {
                 reply(res, 200, session(req)->engine_step());
             }));
    srv.Get("/games/:id/trace", guarded([session](const httplib::Request& req, httplib::Response& res) {
                auto s = session(req);
                res.status = 200;
                res.set_header("X-Trace-Hash", s->hash());
                res.set_content(s->trace(), "application/x-ndjson");
            }));
}

Service::~Service() { stop(); }

std::pair<int, json> Service::create(const json& body) {
    try {
        if (!body.is_object()) throw GameError("InvalidConfig", "body must be an object");
        GameConfig cfg = GameConfig::from_json(body.value("config", json::object()));
        Role role = role_from_string(body.value("human_role", "observer"));
        std::string engine = body.value("engine_policy", "");
        std::string container = body.value("container", role == Role::Spreader ? engine : std::string("null"));
        std::string spreader = body.value("spreader", role == Role::Container ? engine : std::string("paper"));
        if (role != Role::Observer && engine.empty())
            throw GameError("InvalidConfig", "engine_policy names the engine's side");
        auto s = std::make_shared<Session>(cfg, role, container, spreader);
        std::string id;
        {
            std::unique_lock lk(impl_->mu);
            do id = impl_->new_id();
            while (impl_->games.count(id));
            impl_->games[id] = s;
        }
        return {201, {{"id", id}, {"state", s->state(std::nullopt)}}};
    } catch (const GameError& e) {
        json b = error_body(e.code(), e.what());
        return {400, b};
    } catch (const json::exception& e) {
        return {400, error_body("InvalidConfig", e.what())};
    }
}

std::shared_ptr<Session> Service::find(const std::string& id) const {
    std::shared_lock lk(impl_->mu);
    auto it = impl_->games.find(id);
    return it == impl_->games.end() ? nullptr : it->second;
}

size_t Service::sessions() const {
    std::shared_lock lk(impl_->mu);
    return impl_->games.size();
}

int Service::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::serve() { return impl_->server.listen_after_bind(); }

void Service::stop() {
    if (impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace contain
