package com.example.app;

import android.net.ConnectivityManager;
import android.net.NetworkCapabilities;
import android.net.NetworkInfo;

public class Net {
    private final ConnectivityManager cm;

    public Net(ConnectivityManager cm) {
        this.cm = cm;
    }

    public boolean online() {
        NetworkInfo info = cm.getActiveNetworkInfo();
        NetworkCapabilities caps = cm.getNetworkCapabilities(cm.getActiveNetwork());
        return info != null && info.isConnected()
                && info.getType() == ConnectivityManager.TYPE_WIFI
                && caps != null && caps.hasCapability(NetworkCapabilities.NET_CAPABILITY_INTERNET);
    }
}
