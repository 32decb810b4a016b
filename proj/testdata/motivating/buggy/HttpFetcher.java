/*
 * Copyright (C) 2012 The Android Open Source Project
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

package com.example.reader.net;

import android.content.Context;
import android.net.ConnectivityManager;
import android.net.NetworkInfo;
import android.net.http.AndroidHttpClient;
import android.text.TextUtils;
import android.util.Log;

import org.apache.http.HttpResponse;
import org.apache.http.HttpStatus;
import org.apache.http.client.methods.HttpGet;
import org.apache.http.util.EntityUtils;

import java.io.IOException;
import java.util.ArrayList;
import java.util.Collections;
import java.util.List;

/**
 * Downloads feed documents over HTTP.
 */
public final class HttpFetcher {
    private static final String TAG = "HttpFetcher";
    private static final String USER_AGENT = "FeedReader/2.1 (Android)";
    private static final int MAX_REDIRECTS = 5;

    private final Context context;
    private final List<String> history = new ArrayList<String>();
    private int failures;

    public HttpFetcher(Context context) {
        if (context == null) {
            throw new IllegalArgumentException("context == null");
        }
        this.context = context.getApplicationContext();
    }

    /**
     * Returns true when some network interface is connected.
     */
    public boolean isOnline() {
        ConnectivityManager cm = (ConnectivityManager)
                context.getSystemService(Context.CONNECTIVITY_SERVICE);
        NetworkInfo info = cm.getActiveNetworkInfo();
        return info != null && info.isConnected();
    }

    public List<String> getHistory() {
        return Collections.unmodifiableList(history);
    }

    public int getFailureCount() {
        return failures;
    }

    public void resetFailures() {
        failures = 0;
    }

    static String normalizeUrl(String url) {
        if (TextUtils.isEmpty(url)) {
            return null;
        }
        String trimmed = url.trim();
        if (!trimmed.startsWith("http://") && !trimmed.startsWith("https://")) {
            trimmed = "http://" + trimmed;
        }
        int hash = trimmed.indexOf('#');
        if (hash >= 0) {
            trimmed = trimmed.substring(0, hash);
        }
        return trimmed;
    }

    static boolean isRedirect(int status) {
        switch (status) {
            case HttpStatus.SC_MOVED_PERMANENTLY:
            case HttpStatus.SC_MOVED_TEMPORARILY:
            case HttpStatus.SC_SEE_OTHER:
            case HttpStatus.SC_TEMPORARY_REDIRECT:
                return true;
            default:
                return false;
        }
    }

    private void remember(String url) {
        synchronized (history) {
            history.add(url);
            while (history.size() > 50) {
                history.remove(0);
            }
        }
    }

    /**
     * Follows at most {@link #MAX_REDIRECTS} hops and returns the final URL.
     */
    public String resolve(String url, List<String> locations) {
        String current = normalizeUrl(url);
        for (int i = 0; i < locations.size() && i < MAX_REDIRECTS; i++) {
            String next = locations.get(i);
            if (next == null) {
                break;
            }
            current = normalizeUrl(next);
        }
        remember(current);
        return current;
    }

    /**
     * Builds a short human-readable summary of the fetch history.
     */
    public String describeHistory() {
        StringBuilder sb = new StringBuilder();
        synchronized (history) {
            if (history.isEmpty()) {
                return "no requests";
            }
            int shown = 0;
            for (String entry : history) {
                if (shown > 0) {
                    sb.append(", ");
                }
                sb.append(entry);
                if (++shown == 3) {
                    sb.append(", ...");
                    break;
                }
            }
        }
        sb.append(" (").append(failures).append(" failed)");
        return sb.toString();
    }

    /**
     * Downloads the document at {@code url} with a per-call client.
     *
     * @param url feed location; normalized before use
     * @return the body text, or null on failure
     */
    public String fetchContent(String url) {
        String content = null;
        HttpGet request = new HttpGet(normalizeUrl(url));
        request.setHeader("Accept", "application/rss+xml, text/xml");
        request.setHeader("Cache-Control", "no-cache");
        Log.d(TAG, "fetching " + url);
        final AndroidHttpClient client =
                AndroidHttpClient.newInstance(USER_AGENT);
        try {
            HttpResponse response = client.execute(request);
            int status = response.getStatusLine().getStatusCode();
            if (status == HttpStatus.SC_OK) {
                content = EntityUtils.toString(response.getEntity());
            } else {
                Log.w(TAG, "unexpected status " + status);
                failures++;
            }
        } catch (IOException e) {
            Log.e(TAG, "download failed: " + url, e);
            failures++;
        } catch (IllegalStateException e) {
            Log.e(TAG, "malformed url: " + url, e);
            failures++;
        }
        return content;
    }
}
