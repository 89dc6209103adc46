/* Build: cc figure3.c -I../include ../../../target/debug/libduopoly_ffi.a -lpthread -ldl -lm */
#include <stdio.h>

#include "duopoly.h"

int main(int argc, char **argv) {
    DuopolyCournotOutcome cournot;
    if (duopoly_cournot_equilibrium(3.0, DUOPOLY_METHOD_CLOSED_FORM, &cournot) != DUOPOLY_STATUS_OK) {
        return 1;
    }
    printf("cournot %.12g %.12g %.12g\n", cournot.q_a, cournot.profit_a, cournot.profit_b);

    DuopolyHotellingOutcome hot;
    if (duopoly_hotelling_equilibrium_outcome(1.0, 1.0, 0.0, 0.0, &hot) != DUOPOLY_STATUS_OK) {
        return 1;
    }
    printf("hotelling %.12g %.12g %.12g\n", hot.p_a, hot.p_b, hot.profit_a);

    double x, y;
    DuopolyStatus st = duopoly_hotelling_split(1.0, 1.0, 0.0, 0.0, 5.0, 0.1, &x, &y);
    printf("split status %d: %s\n", (int)st, duopoly_last_error());

    if (argc > 1) {
        DuopolyGame *game = NULL;
        if (duopoly_game_load(argv[1], &game) != DUOPOLY_STATUS_OK) {
            fprintf(stderr, "%s\n", duopoly_last_error());
            return 1;
        }
        DuopolyProfile eq;
        duopoly_game_nash_at(game, 0, &eq);
        DuopolyPdResult pd;
        duopoly_game_classify_pd(game, &pd);
        printf("nash %zu (%zu,%zu) pd %d %.12g %.12g\n", duopoly_game_nash_count(game), eq.row, eq.col,
               (int)pd.is_prisoners_dilemma, pd.dominated_by.row_payoff, pd.dominated_by.col_payoff);
        duopoly_game_free(game);
    }
    return 0;
}
