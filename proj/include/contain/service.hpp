#pragma once

#include <memory>
#include <string>

#include "contain/session.hpp"

namespace contain {

// HTTP JSON front end over Sessions:
//   POST /games                  {config, human_role, engine_policy | container + spreader}
//   GET  /games/{id}/state       ?viewport=x0,y0,x1,y1
//   POST /games/{id}/move        {cells: [[x,y],...], t?: expected turn}
//   POST /games/{id}/engine-step
//   GET  /games/{id}/trace       JSONL, X-Trace-Hash header
class Service {
public:
    Service();
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    // port 0 picks a free port; returns the bound port or -1
    int bind(const std::string& host, int port);
    // blocks until stop()
    bool serve();
    void stop();
    void wait_until_ready() const;

    // the handlers, callable without a socket: returns (status, body)
    std::pair<int, json> create(const json& body);
    std::shared_ptr<Session> find(const std::string& id) const;
    size_t sessions() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// "x0,y0,x1,y1"; InvalidConfig on anything else
Box parse_viewport(const std::string& s);

}  // namespace contain
