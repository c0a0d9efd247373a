#include "goldcast/trading/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "goldcast/errors.hpp"
#include "goldcast/textio.hpp"

namespace goldcast::trading {

namespace {

double round_to_tick(double price, double tick) {
    return std::round(price / tick) * tick;
}

double floor_to_step(double lot, double step) {
    return std::floor(lot / step + 1e-9) * step;
}

}  // namespace

const char* order_kind_name(OrderKind kind) {
    switch (kind) {
        case OrderKind::buy_stop: return "buy_stop";
        case OrderKind::buy_limit: return "buy_limit";
        case OrderKind::sell_stop: return "sell_stop";
        case OrderKind::sell_limit: return "sell_limit";
    }
    return "?";
}

double Account::used_margin(double contract_size) const {
    double used = 0.0;
    for (const auto& p : open_positions) used += p.entry * contract_size * p.lot / leverage;
    return used;
}

double compute_lot(const Account& account, double entry, double stop_loss,
                   const TradingParams& params) {
    if (!(account.free_margin > 0.0))
        throw NumericError("compute_lot: non-positive free margin");
    const double dist = std::fabs(entry - stop_loss);
    if (dist == 0.0) throw NumericError("compute_lot: entry equals stop loss");

    const double risk_lot =
        params.risk_fraction * account.free_margin / (dist * params.contract_size);
    const double margin_lot =
        account.free_margin * params.leverage / (entry * params.contract_size);
    const double lot = floor_to_step(std::min(risk_lot, margin_lot), params.lot_step);
    return lot < params.lot_step ? 0.0 : lot;
}

std::optional<PendingOrder> make_order(const Forecast& forecast, double current_close,
                                       const Account& account, const TradingParams& params) {
    if (!(forecast.high > forecast.low))
        throw NumericError("make_order: degenerate forecast (high <= low) for " +
                           forecast.date.to_string());
    if (forecast.close == current_close) return std::nullopt;  // no direction

    const bool go_long = forecast.close > current_close;
    PendingOrder order;
    order.placed_at = forecast.date;
    order.expires_at = forecast.date;  // one order per day, dies at the day's close

    const double entry = round_to_tick(go_long ? forecast.low : forecast.high, params.tick);
    const double target = round_to_tick(go_long ? forecast.high : forecast.low, params.tick);
    const double tp_dist = std::fabs(target - entry);
    // Entry and TP sit on the tick grid, so rounding the one-third SL offset
    // keeps |TP-entry| within one tick of 3|entry-SL|.
    const double sl_dist = round_to_tick(tp_dist / 3.0, params.tick);
    if (sl_dist < params.tick) return std::nullopt;  // too narrow to carry any risk

    order.entry = entry;
    order.take_profit = target;
    if (go_long) {
        order.kind = entry < current_close ? OrderKind::buy_limit : OrderKind::buy_stop;
        order.stop_loss = round_to_tick(entry - sl_dist, params.tick);
    } else {
        order.kind = entry > current_close ? OrderKind::sell_limit : OrderKind::sell_stop;
        order.stop_loss = round_to_tick(entry + sl_dist, params.tick);
    }

    order.lot = compute_lot(account, order.entry, order.stop_loss, params);
    if (order.lot <= 0.0) return std::nullopt;  // below minimum lot
    return order;
}

std::optional<TradeRecord> simulate_day(const PendingOrder& order, const data::OhlcBar& bar,
                                        Account& account, const TradingParams& params) {
    const bool is_long = order.is_long();
    bool filled = false;
    switch (order.kind) {
        case OrderKind::buy_limit:
        case OrderKind::sell_stop: filled = bar.low <= order.entry; break;
        case OrderKind::buy_stop:
        case OrderKind::sell_limit: filled = bar.high >= order.entry; break;
    }
    if (!filled) return std::nullopt;

    account.open_positions.push_back({is_long, order.entry, order.lot});

    const bool tp_hit = is_long ? bar.high >= order.take_profit : bar.low <= order.take_profit;
    const bool sl_hit = is_long ? bar.low <= order.stop_loss : bar.high >= order.stop_loss;

    TradeRecord trade;
    trade.date = bar.timestamp;
    trade.kind = order.kind;
    trade.entry = order.entry;
    trade.lot = order.lot;
    if (sl_hit) {  // pessimistic: SL first whenever both levels are in range
        trade.exit = order.stop_loss;
        trade.reason = ExitReason::sl;
    } else if (tp_hit) {
        trade.exit = order.take_profit;
        trade.reason = ExitReason::tp;
    } else {
        trade.exit = bar.close;  // no overnight positions
        trade.reason = ExitReason::expiry;
    }
    const double direction = is_long ? 1.0 : -1.0;
    trade.pnl = direction * (trade.exit - trade.entry) * params.contract_size * trade.lot;

    account.open_positions.pop_back();
    account.balance += trade.pnl;
    account.equity = account.balance;
    account.free_margin = account.equity;
    return trade;
}

TradeLog run_backtest(const std::vector<Forecast>& forecasts,
                      const std::vector<data::OhlcBar>& bars, double initial_balance,
                      const TradingParams& params) {
    TradeLog log;
    log.initial_balance = initial_balance;
    Account account = Account::with_balance(initial_balance, params.leverage);
    double realized = 0.0;  // left-fold P/L sum, so final - initial == sum(pnl) exactly

    for (const auto& forecast : forecasts) {
        const auto it = std::lower_bound(
            bars.begin(), bars.end(), forecast.date,
            [](const data::OhlcBar& b, const Date& d) { return b.timestamp < d; });
        if (it == bars.end() || !(it->timestamp == forecast.date))
            throw DataError("backtest: no bar for forecast date " + forecast.date.to_string());
        if (it == bars.begin())
            throw DataError("backtest: no bar precedes forecast date " +
                            forecast.date.to_string());
        const double current_close = std::prev(it)->close;

        if (account.free_margin > 0.0) {
            const auto order = make_order(forecast, current_close, account, params);
            if (order) {
                ++log.orders_placed;
                const auto trade = simulate_day(*order, *it, account, params);
                if (trade) {
                    realized += trade->pnl;
                    account.balance = initial_balance + realized;
                    account.equity = account.balance;
                    account.free_margin = account.balance;
                    log.trades.push_back(*trade);
                } else {
                    ++log.orders_unfilled;
                }
            }
        }
        log.equity_curve.emplace_back(it->timestamp, account.equity);
    }

    log.final_balance = account.balance;
    return log;
}

void write_trades_csv(const TradeLog& log, const std::string& path) {
    std::string out = "date,kind,entry,exit,lot,pnl,reason\n";
    for (const auto& t : log.trades) {
        const char* reason = t.reason == ExitReason::tp   ? "tp"
                             : t.reason == ExitReason::sl ? "sl"
                                                          : "expiry";
        out += t.date.to_string();
        out += ',';
        out += order_kind_name(t.kind);
        out += ',' + fmt_fixed2(t.entry) + ',' + fmt_fixed2(t.exit) + ',' + fmt_fixed2(t.lot) +
               ',' + fmt_fixed2(t.pnl) + ',' + reason + '\n';
    }
    write_text_file(path, out);
}

void write_equity_csv(const TradeLog& log, const std::string& path) {
    std::string out = "date,equity\n";
    for (const auto& [date, equity] : log.equity_curve)
        out += date.to_string() + ',' + fmt_fixed2(equity) + '\n';
    write_text_file(path, out);
}

std::vector<Forecast> load_forecast_csv(const std::string& path) {
    const std::string text = read_text_file(path);
    std::vector<Forecast> out;
    const auto lines = split(text, '\n');
    if (lines.empty() || trim(lines[0]) != "date,pred_high,pred_low,pred_close")
        throw DataError(path + ":1: expected header 'date,pred_high,pred_low,pred_close'");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string line = trim(lines[i]);
        if (line.empty()) continue;
        const auto f = split(line, ',');
        const std::string where = path + ":" + std::to_string(i + 1);
        if (f.size() != 4) throw DataError(where + ": expected 4 fields");
        Forecast fc;
        try {
            fc.date = Date::parse(trim(f[0]));
        } catch (const DataError& e) {
            throw DataError(where + ": " + e.what());
        }
        fc.high = parse_double(f[1], where);
        fc.low = parse_double(f[2], where);
        fc.close = parse_double(f[3], where);
        if (!out.empty() && !(out.back().date < fc.date))
            throw DataError(where + ": forecast dates not strictly ascending");
        out.push_back(fc);
    }
    return out;
}

void write_forecast_csv(const std::vector<Forecast>& forecasts, const std::string& path) {
    std::string out = "date,pred_high,pred_low,pred_close\n";
    for (const auto& f : forecasts)
        out += f.date.to_string() + ',' + fmt_g(f.high) + ',' + fmt_g(f.low) + ',' +
               fmt_g(f.close) + '\n';
    write_text_file(path, out);
}

}  // namespace goldcast::trading
