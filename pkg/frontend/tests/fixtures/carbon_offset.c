#include "hookapi.h"

int64_t hook(uint32_t reserved)
{
    _g(1,1);
    // emit payment: destination rUwj5vpQqLbhiXCEzT3UfkBbe8NAhtGCg5, amount from percent_of
    {
        int64_t amount_drops = ((({ unsigned char amt_buf[48]; int64_t amt_len = otxn_field(SBUF(amt_buf), sfAmount); (amt_len == 8) ? (int64_t)AMOUNT_TO_DROPS(amt_buf) : 0; })) * 1) / 100;
        uint8_t dest_acc[20];
        util_accid(SBUF(dest_acc), SBUF("rUwj5vpQqLbhiXCEzT3UfkBbe8NAhtGCg5"));
        etxn_reserve(1);
        unsigned char tx_buf[PREPARE_PAYMENT_SIMPLE_SIZE];
        PREPARE_PAYMENT_SIMPLE(tx_buf, amount_drops, dest_acc, 0, 0);
        uint8_t emithash[32];
        emit(SBUF(emithash), SBUF(tx_buf));
    }
    accept(SBUF("CarbonOffset: forwarded 1%"),0);
}

int64_t cbak(uint32_t what)
{
    _g(2,1);
    trace_num(SBUF("CarbonOffset: emit result"),what);
    accept(SBUF("CarbonOffset: cbak done"),0);
}
