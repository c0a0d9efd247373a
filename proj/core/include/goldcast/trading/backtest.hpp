#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goldcast/data/ohlc.hpp"
#include "goldcast/date.hpp"

namespace goldcast::trading {

/// Broker-style parameters. Gold contract: 1 lot = 100 oz, tick 0.01 USD.
struct TradingParams {
    double risk_fraction = 0.05;   // fraction of free margin risked per trade
    double leverage = 100.0;       // 1:100
    double tick = 0.01;            // price increment
    double lot_step = 0.01;        // minimum lot and lot granularity
    double contract_size = 100.0;  // ounces per lot
};

enum class OrderKind { buy_stop, buy_limit, sell_stop, sell_limit };

const char* order_kind_name(OrderKind kind);

/// Pending order with the 3:1 reward-to-risk geometry:
/// |take_profit - entry| = 3 |entry - stop_loss| within one tick.
struct PendingOrder {
    OrderKind kind = OrderKind::buy_stop;
    double entry = 0.0;
    double take_profit = 0.0;
    double stop_loss = 0.0;
    double lot = 0.0;
    Date placed_at;
    Date expires_at;

    bool is_long() const { return kind == OrderKind::buy_stop || kind == OrderKind::buy_limit; }
};

struct Account {
    double balance = 0.0;
    double equity = 0.0;
    double free_margin = 0.0;
    double leverage = 100.0;

    struct Position {
        bool is_long = true;
        double entry = 0.0;
        double lot = 0.0;
    };
    std::vector<Position> open_positions;

    static Account with_balance(double initial, double leverage = 100.0) {
        return {initial, initial, initial, leverage, {}};
    }
    double used_margin(double contract_size) const;
};

/// Forecast triple in price units, as consumed by the order builder.
struct Forecast {
    Date date;  // the day the forecast is for
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
};

enum class ExitReason { tp, sl, expiry };

struct TradeRecord {
    Date date;
    OrderKind kind = OrderKind::buy_stop;
    double entry = 0.0;
    double exit = 0.0;
    double lot = 0.0;
    double pnl = 0.0;
    ExitReason reason = ExitReason::expiry;
};

struct TradeLog {
    std::vector<TradeRecord> trades;
    std::vector<std::pair<Date, double>> equity_curve;
    double initial_balance = 0.0;
    double final_balance = 0.0;
    std::size_t orders_placed = 0;
    std::size_t orders_unfilled = 0;
};

/// Risk-based sizing: lot = risk_fraction * free_margin / (|entry - SL| * contract),
/// floored to the lot step and additionally capped so the required margin
/// entry * contract * lot / leverage fits inside the free margin. Returns 0
/// when the result falls below one lot step. Throws NumericError for
/// non-positive free margin or entry == stop_loss.
double compute_lot(const Account& account, double entry, double stop_loss,
                   const TradingParams& params);

/// Builds the day's pending order from a forecast triple per the rule set:
/// direction from predicted close vs current close, entry at the predicted
/// low (long) or high (short), TP at the opposite extreme, SL at one third of
/// the TP distance. Limit vs stop follows from the entry's position relative
/// to the current close. Returns nullopt for a no-trade day.
/// Throws NumericError when forecast.high <= forecast.low.
std::optional<PendingOrder> make_order(const Forecast& forecast, double current_close,
                                       const Account& account, const TradingParams& params);

/// Resolves one order against the realized bar: fill when the bar range
/// crosses the entry per the order kind; afterwards TP/SL against the same
/// bar, pessimistically (SL first when both are in range); neither hit means
/// an exit at the bar close (reason expiry). Unfilled orders lapse.
std::optional<TradeRecord> simulate_day(const PendingOrder& order, const data::OhlcBar& bar,
                                        Account& account, const TradingParams& params);

/// Walks forecasts day by day against realized bars. Each forecast for day D
/// is turned into an order off the close of the bar preceding D and simulated
/// against bar D. Throws DataError when a forecast date has no matching bar
/// or no preceding bar.
TradeLog run_backtest(const std::vector<Forecast>& forecasts,
                      const std::vector<data::OhlcBar>& bars, double initial_balance,
                      const TradingParams& params);

void write_trades_csv(const TradeLog& log, const std::string& path);
void write_equity_csv(const TradeLog& log, const std::string& path);

/// Reads `date,pred_high,pred_low,pred_close`.
std::vector<Forecast> load_forecast_csv(const std::string& path);
void write_forecast_csv(const std::vector<Forecast>& forecasts, const std::string& path);

}  // namespace goldcast::trading
