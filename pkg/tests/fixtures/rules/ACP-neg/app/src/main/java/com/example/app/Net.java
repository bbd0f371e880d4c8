package com.example.app;

import android.net.NetworkCapabilities;

public class Net {
    private final NetworkCapabilities caps;
    private final Status status;

    public Net(NetworkCapabilities caps, Status status) {
        this.caps = caps;
        this.status = status;
    }

    public boolean online() {
        return status.isConnected() && caps.hasTransport(NetworkCapabilities.TRANSPORT_WIFI)
                && caps.hasCapability(NetworkCapabilities.NET_CAPABILITY_VALIDATED);
    }
}
