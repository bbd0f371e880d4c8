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

    public boolean wifi() {
        NetworkInfo info = cm.getActiveNetworkInfo();
        return info != null && info.getType() == ConnectivityManager.TYPE_WIFI
                && cm.getNetworkCapabilities(cm.getActiveNetwork())
                        .hasCapability(NetworkCapabilities.NET_CAPABILITY_INTERNET);
    }

    public boolean connected() {
        NetworkInfo info = cm.getActiveNetworkInfo();
        return info != null && info.isConnected()
                && cm.getNetworkCapabilities(cm.getActiveNetwork())
                        .hasCapability(NetworkCapabilities.NET_CAPABILITY_INTERNET);
    }

    public boolean typed() {
        NetworkInfo info = cm.getActiveNetworkInfo();
        return info != null && info.isConnected()
                && info.getType() == ConnectivityManager.TYPE_WIFI;
    }
}
