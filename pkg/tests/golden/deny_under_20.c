#include "hookapi.h"

int64_t hook(uint32_t reserved)
{
    _g(1,1);
    if (((({ unsigned char amt_buf[48]; int64_t amt_len = otxn_field(SBUF(amt_buf), sfAmount); (amt_len == 8) ? (int64_t)AMOUNT_TO_DROPS(amt_buf) : 0; })) < (20000000))) {
        rollback(SBUF("Denied: amount under 20 XRP"),20);
    } else {
        accept(SBUF("Accepted: 20 XRP or more"),0);
    }
}

int64_t cbak(uint32_t reserved)
{
    return 0;
}
